# a degree-one cocycle generating the first cohomology mod 2
1 2
2 3
2 4
3 4
3 6
4 5
