import random
from itertools import combinations

import pytest

from propcalc.chains import (ChainElement, act, act_type, chain_compose,
                             chain_eval, chains_S_check, compose_types,
                             cup_type, delta_type, differential,
                             differential_via_graphs, diff_type, eps_type,
                             face_boundary, horizontal_chain, identity_type,
                             mu_type, permute_inputs_chain, permute_outputs_chain,
                             splittings, tensor_boundary)
from propcalc.errors import GraphError
from propcalc.graphs import Permutation
from propcalc.surjections import SurjType, enumerate_basis, random_stype
from propcalc.terms import parse


def faces_of(d):
    vs = range(d + 1)
    return [tuple(c) for k in range(1, d + 2) for c in combinations(vs, k)]


# --- differential ----------------------------------------------------------

def test_differential_degree_zero_generator():
    assert differential(delta_type()).is_zero()
    assert differential(eps_type()).is_zero()


def test_differential_cup_one_generator():
    d = differential(SurjType(1, 2, ((1, 2, 1),)))
    assert {t.blocks for t in d.support} == {((1, 2),), ((2, 1),)}


def test_differential_of_product_is_the_two_caps():
    d = differential(mu_type())
    assert {t.blocks for t in d.support} == {((), (1,)), ((1,), ())}


def test_differential_drops_degenerate_faces():
    d = differential(SurjType(1, 2, ((1, 2, 1, 2),)))
    assert {t.blocks for t in d.support} == {((2, 1, 2),), ((1, 2, 1),)}


def test_d_squared_zero_exhaustive_small():
    for n in (1, 2):
        for m in (1, 2, 3):
            for k in range(0, 3):
                for t in enumerate_basis(n, m, k):
                    assert differential(differential(t)).is_zero()


def test_differential_agrees_with_graph_expansion_route():
    rng = random.Random(51)
    checked = 0
    for n in (1, 2):
        for m in (1, 2):
            for k in range(0, 3):
                for t in enumerate_basis(n, m, k):
                    assert differential(t) == differential_via_graphs(t)
                    checked += 1
    for _ in range(40):
        t = random_stype(rng, max_n=3, max_m=3, max_degree=2)
        assert differential(t) == differential_via_graphs(t)
    assert checked > 20


def test_differential_is_a_derivation_for_composition():
    rng = random.Random(52)
    for _ in range(150):
        t1 = random_stype(rng, max_n=2, max_m=2, max_degree=2)
        while True:
            t2 = random_stype(rng, max_n=3, max_m=2, max_degree=2)
            if t2.n == t1.m:
                break
        x, y = ChainElement.of(t1), ChainElement.of(t2)
        lhs = differential(chain_compose(x, y))
        rhs = (chain_compose(differential(x), y)
               + chain_compose(x, differential(y)))
        assert lhs == rhs


# --- the action ------------------------------------------------------------

def test_act_diagonal_on_an_edge():
    assert act_type(delta_type(), ((0, 1),)) == frozenset(
        {((0,), (0, 1)), ((0, 1), (1,))})


def test_act_join():
    assert act_type(mu_type(), ((0,), (1, 2))) == frozenset({((0, 1, 2),)})
    assert act_type(mu_type(), ((0, 1), (1, 2))) == frozenset()


def test_act_counit():
    assert act_type(eps_type(), ((0, 1),)) == frozenset()
    assert act_type(eps_type(), ((3,),)) == frozenset({()})


def test_act_arity_checked():
    with pytest.raises(GraphError):
        act_type(mu_type(), ((0,),))


def test_chain_map_property_sample():
    rng = random.Random(53)
    for _ in range(250):
        t = random_stype(rng, max_n=2, max_m=3, max_degree=2)
        x = ChainElement.of(t)
        dx = differential(x)
        d = rng.randint(1, 4)
        tensor = tuple(rng.choice(faces_of(d)) for _ in range(t.n))
        lhs = act(dx, [tensor])
        rhs = tensor_boundary(act(x, [tensor])) ^ act(x, list(
            {tensor[:i] + (df,) + tensor[i + 1:]
             for i in range(len(tensor)) for df in face_boundary(tensor[i])}))
        assert lhs == rhs


def test_act_respects_operadic_composition():
    rng = random.Random(54)
    for _ in range(200):
        top = random_stype(rng, max_n=1, max_m=3, max_degree=2)
        bots = [random_stype(rng, max_n=1, max_m=2, max_degree=1)
                for _ in range(top.m)]
        bottom = ChainElement.of(bots[0])
        for y in bots[1:]:
            bottom = horizontal_chain(bottom, ChainElement.of(y))
        xc = ChainElement.of(top)
        comp = chain_compose(xc, bottom)
        f = tuple(range(rng.randint(1, 5)))
        assert act(comp, [(f,)]) == act(bottom, act(xc, [(f,)]))


def test_act_respects_horizontal_composition():
    rng = random.Random(55)
    for _ in range(100):
        t1 = random_stype(rng, max_n=2, max_m=2, max_degree=1)
        t2 = random_stype(rng, max_n=1, max_m=2, max_degree=1)
        h = ChainElement.of(t1)
        h = horizontal_chain(h, ChainElement.of(t2))
        tensor = tuple(rng.choice(faces_of(3)) for _ in range(t1.n + t2.n))
        lhs = act(h, [tensor])
        rhs = frozenset()
        for o1 in act_type(t1, tensor[:t1.n]):
            for o2 in act_type(t2, tensor[t1.n:]):
                rhs ^= {o1 + o2}
        assert lhs == rhs


def test_act_equivariance():
    rng = random.Random(56)
    count = 0
    while count < 100:
        t = random_stype(rng, max_n=2, max_m=2, max_degree=1)
        if t.n != 2 or t.m != 2:
            continue
        count += 1
        x = ChainElement.of(t)
        sigma = Permutation((2, 1))
        tau = Permutation((2, 1))
        tensor = tuple(rng.choice(faces_of(3)) for _ in range(2))
        # inputs: acting on the permuted element equals permuting the tensor
        lhs = act(permute_inputs_chain(x, sigma), [tensor])
        rhs = act(x, [(tensor[1], tensor[0])])
        assert lhs == rhs
        # outputs: permuting the result
        lhs = act(permute_outputs_chain(x, tau), [tensor])
        rhs = frozenset((o2, o1) for o1, o2 in act(x, [tensor]))
        assert lhs == rhs


def test_coassociativity_and_counit_laws_on_faces():
    for d in range(0, 7):
        for f in faces_of(d):
            one = act_type(delta_type(), (f,))
            lhs = frozenset()
            rhs = frozenset()
            for p, q in one:
                for p1, p2 in act_type(delta_type(), (p,)):
                    lhs ^= {(p1, p2, q)}
                for q1, q2 in act_type(delta_type(), (q,)):
                    rhs ^= {(p, q1, q2)}
            assert lhs == rhs
            assert frozenset((q,) for p, q in one if len(p) == 1) == {(f,)}
            assert frozenset((p,) for p, q in one if len(q) == 1) == {(f,)}


# --- the chain class of a term ----------------------------------------------

def test_chain_eval_generators():
    assert chain_eval(parse("mu(1/2)")).support == frozenset({mu_type()})
    assert chain_eval(parse("delta")).support == frozenset({delta_type()})
    assert chain_eval(parse("h(1/2)")).is_zero()


def test_chains_S_relations_hold_in_the_quotient():
    # productcounit
    assert chains_S_check(parse("mu(1/2) ; eps")).is_zero()
    # left and right counitality
    left = chains_S_check(parse("delta ; (eps | id)"))
    right = chains_S_check(parse("delta ; (id | eps)"))
    assert left.support == right.support == frozenset({identity_type(1)})


def test_chain_eval_respects_the_quotient():
    lhs = chain_eval(parse("delta ; (delta | id)"))
    rhs = chain_eval(parse("delta ; (id | delta)"))
    assert lhs == rhs
    # the involution collapses the bubble cell, so its chain class is zero
    bubble = chain_eval(parse("delta ; mu(1/2)"))
    assert bubble.is_zero() and bubble.degree == 1


def test_compose_types_cup_composition():
    # the coproduct below two coproducts: all splittings of degree 0
    out = compose_types(delta_type(), horizontal_chain(
        ChainElement.of(delta_type()), ChainElement.of(identity_type(1))).support.__iter__().__next__())
    assert out == frozenset({SurjType(1, 3, ((1, 2, 3),))})


def test_cup_type_shape():
    assert cup_type(0) == delta_type()
    assert cup_type(2).blocks == ((1, 2, 1, 2),)
    assert cup_type(3).degree == 3


def test_splittings_count():
    # r pieces of a q-simplex: binomial(q + r - 1, r - 1)
    assert len(list(splittings((0, 1, 2), 2))) == 3
    assert len(list(splittings((0, 1), 3))) == 3
    assert list(splittings((0,), 1)) == [((0,),)]
