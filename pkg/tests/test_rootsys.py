from collections import Counter
from itertools import combinations, product

import pytest

from lieosc import Family, InvalidRankError, positive_roots
from lieosc.rootsys import algebra_dim, defining_dim, simple_roots

CASES = [(f, n) for f in "BCD" for n in range(Family(f).min_rank, 7)]


def brute_roots(family, n):
    """All roots of the family as integer vectors, from the textbook description."""
    out = set()
    e = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    for i, j in combinations(range(n), 2):
        for s, t in product((1, -1), repeat=2):
            out.add(tuple(s * a + t * b for a, b in zip(e[i], e[j])))
    for i in range(n):
        for s in (1, -1):
            if family == "C":
                out.add(tuple(2 * s * a for a in e[i]))
            if family == "B":
                out.add(tuple(s * a for a in e[i]))
    return out


def test_documented_simple_roots():
    assert simple_roots("C", 2) == [(1, -1), (0, 2)]
    assert simple_roots("B", 3) == [(1, -1, 0), (0, 1, -1), (0, 0, 1)]
    assert simple_roots("D", 4) == [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)]


@pytest.mark.parametrize(
    "family, n, label, vector",
    [("C", 3, "11223", (2, 0, 0)), ("B", 3, "12233", (1, 1, 0)), ("D", 4, "12234", (1, 1, 0, 0))],
)
def test_labels(family, n, label, vector):
    assert positive_roots(family, n).by_label(label).vector == vector


@pytest.mark.parametrize("family, n, dim", [("C", 2, 10), ("D", 3, 15), ("B", 2, 10), ("C", 4, 36), ("D", 4, 28)])
def test_algebra_dim(family, n, dim):
    assert algebra_dim(family, n) == dim


@pytest.mark.parametrize("family, n", CASES)
def test_root_system_against_enumeration(family, n):
    rs = positive_roots(family, n)
    simple = simple_roots(family, n)
    vectors = [r.vector for r in rs.positive]
    assert len(set(vectors)) == len(vectors)
    every = brute_roots(family, n)
    assert set(vectors) | {tuple(-x for x in v) for v in vectors} == every
    assert 2 * len(vectors) + n == algebra_dim(family, n)
    for r in rs.positive:
        counts = Counter(int(ch) for ch in r.label)
        rebuilt = tuple(sum(counts[k + 1] * simple[k][c] for k in range(n)) for c in range(n))
        assert rebuilt == r.vector
        assert r.height == len(r.label)
    for k, s in enumerate(simple):
        assert rs.by_label(str(k + 1)).vector == s


@pytest.mark.parametrize("family, n", CASES)
def test_label_sum_closure(family, n):
    rs = positive_roots(family, n)
    for a, b in combinations(rs.positive, 2):
        target = rs.by_vector(tuple(x + y for x, y in zip(a.vector, b.vector)))
        if target is not None:
            assert target.label == "".join(sorted(a.label + b.label))


@pytest.mark.parametrize("family, n", CASES)
def test_ordering_is_height_then_lex(family, n):
    labels = [r.label for r in positive_roots(family, n).positive]
    assert labels == sorted(labels, key=lambda s: (len(s), s))


def test_defining_dims():
    assert [defining_dim(f, 3) for f in "BCD"] == [7, 6, 6]


@pytest.mark.parametrize("family, n", [("C", 1), ("D", 2), ("B", 1), ("E", 6), ("C", 2.0)])
def test_invalid_rank(family, n):
    with pytest.raises(InvalidRankError):
        positive_roots(family, n)


def test_json_export():
    out = positive_roots("C", 2).to_json()
    assert out["family"] == "C" and out["rank"] == 2
    assert out["positive"][0] == {"label": "1", "vector": [1, -1]}
