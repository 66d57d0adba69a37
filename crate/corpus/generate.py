#!/usr/bin/env python3
"""Regenerates the JSON fixtures in this directory.

Each fixture lists maximal simplices plus an integral 1-cocycle given on
every edge of the face closure.
"""
import itertools
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def closure(maximal):
    faces = set()
    for s in maximal:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            for f in itertools.combinations(s, k):
                faces.add(f)
    return faces


def edges_of(maximal):
    return sorted(f for f in closure(maximal) if len(f) == 2)


def write(name, n, maximal, xi_fn, note):
    maximal = [sorted(s) for s in maximal]
    xi = []
    for (i, j) in edges_of(maximal):
        xi.append({"edge": [i, j], "value": int(xi_fn(i, j))})
    doc = {"description": note, "vertices": n, "maximal_simplices": maximal, "xi": xi}
    with open(os.path.join(HERE, name), "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def oriented(table):
    """Edge values given on directed pairs; reversed pairs are negated."""

    def f(i, j):
        if (i, j) in table:
            return table[(i, j)]
        if (j, i) in table:
            return -table[(j, i)]
        return 0

    return f


def grid_torus(n, offset=0):
    v = lambda i, j: offset + (i % n) * n + (j % n)
    tris = []
    for i in range(n):
        for j in range(n):
            tris.append([v(i, j), v(i + 1, j), v(i + 1, j + 1)])
            tris.append([v(i, j), v(i, j + 1), v(i + 1, j + 1)])
    return v, tris


def crossing(v, n, axis):
    """Cocycle counting forward crossings of the seam between index n-1 and 0."""
    table = {}
    for i in range(n):
        for j in range(n):
            for di, dj in ((1, 0), (0, 1), (1, 1)):
                a, b = (i, j), ((i + di) % n, (j + dj) % n)
                ca, cb = a[axis], b[axis]
                if ca == n - 1 and cb == 0:
                    table[(v(*a), v(*b))] = 1
    return table


# circle with three vertices
write("circle.json", 3, [[0, 1], [1, 2], [0, 2]], oriented({(0, 1): 1}),
      "C3, xi(01)=1: period generator 1")

# 3x3 grid torus with the fibration class (crossing the i-seam)
v, tris = grid_torus(3)
write("torus.json", 9, tris, oriented(crossing(v, 3, 0)),
      "T^2 as 3x3 grid, xi = fibration class of the mapping torus of id_{S^1}")

# minimal 7-vertex torus, xi = 0
mobius = [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)] + \
         [[i, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
write("minimal_torus.json", 7, mobius, lambda i, j: 0,
      "minimal 7-vertex torus, xi = 0")

# boundary of the tetrahedron
write("sphere.json", 4, [list(c) for c in itertools.combinations(range(4), 3)],
      lambda i, j: 0, "S^2 as boundary of a tetrahedron, xi = 0")

# mapping torus of the degree-2 self-map of the circle:
# Y = y0..y2, A = a0..a5 (maps to Y wrapping twice), B = b0..b5 (collapses to Y),
# prism A x I between A and B; xi counts passages B -> Y.
Y = [0, 1, 2]
A = [3 + i for i in range(6)]
B = [9 + i for i in range(6)]
tris = []
for i in range(6):
    a0, a1 = A[i], A[(i + 1) % 6]
    tris.append([a0, a1, Y[(i + 1) % 3]])
    tris.append([a0, Y[i % 3], Y[(i + 1) % 3]])
for i in range(3):
    b0, b1, b2 = B[2 * i], B[2 * i + 1], B[(2 * i + 2) % 6]
    tris.append([b0, b1, Y[i]])
    tris.append([b1, b2, Y[(i + 1) % 3]])
    tris.append([b1, Y[i], Y[(i + 1) % 3]])
for i in range(6):
    a0, a1 = A[i], A[(i + 1) % 6]
    b0, b1 = B[i], B[(i + 1) % 6]
    tris.append([a0, a1, b1])
    tris.append([a0, b0, b1])
table = {}
for b in B:
    for y in Y:
        table[(b, y)] = 1
write("mapping_torus_deg2.json", 15, tris, oriented(table),
      "mapping torus of the degree-2 circle map; xi = fibration class")

# genus-2 surface: 5x5 grid torus with a handle (tube through a middle ring)
n = 5
v, tris = grid_torus(n)
d1 = [v(1, 1), v(2, 1), v(2, 2)]
d2 = [v(3, 3), v(4, 3), v(4, 4)]
tris = [t for t in tris if sorted(t) != sorted(d1) and sorted(t) != sorted(d2)]
M = [25, 26, 27]
P, Q = d1, [d2[0], d2[2], d2[1]]
for k in range(3):
    tris.append([P[k], P[(k + 1) % 3], M[k]])
    tris.append([P[(k + 1) % 3], M[k], M[(k + 1) % 3]])
    tris.append([M[k], M[(k + 1) % 3], Q[k]])
    tris.append([M[(k + 1) % 3], Q[k], Q[(k + 1) % 3]])
table = {}
for (i, j) in edges_of(tris):
    if i in M and j in Q:
        table[(i, j)] = 1
    elif j in M and i in Q:
        table[(j, i)] = 1
write("genus2.json", 28, tris, oriented(table),
      "genus-2 surface (torus with a handle); xi dual to the handle meridian")

# T^2 wedge S^1: 3x3 grid torus plus a 3-edge loop through vertex 0
v, tris = grid_torus(3)
write("torus_wedge_circle.json", 11, tris + [[0, 9], [9, 10], [0, 10]],
      oriented({(9, 10): 1}), "T^2 v S^1, xi supported on the circle")

# theta graph: two vertices joined by three subdivided arcs
write("theta.json", 5, [[0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [1, 4]],
      oriented({(0, 2): 1, (2, 1): 1, (0, 3): 1, (3, 1): 1}),
      "theta graph; xi = 1 along two arcs, 0 along the third")

# cone on a triangle (a disc); xi = coboundary of the vertex index
write("cone.json", 4, [[0, 1, 3], [1, 2, 3], [0, 2, 3]], lambda i, j: j - i,
      "contractible cone, xi exact and nonzero")
