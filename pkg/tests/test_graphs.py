import json
import random

import pytest

from torelli.graphs import (
    ForbiddenResult,
    MarkedGraph,
    NonTrivalentInput,
    compare_sign,
    corolla,
    parse_graph,
    presentation_audit,
    reduce,
    reduce_trivalent,
)
from torelli.labels import LabelMonomial
from torelli.setparts import LabelledPartition

U3 = LabelMonomial.unit(3)
E3 = LabelMonomial.e(3)
P1 = LabelMonomial.p(3, 1)
P2 = LabelMonomial.p(3, 2)
P1SQ = P1 * P1


def test_corolla_reduces_to_its_part():
    g = corolla(3, U3, (1, 2, 3))
    part = LabelledPartition(3, [((1, 2, 3), U3)])
    assert reduce(g).coefficient(part) == 1


def test_leg_order_sign():
    g = corolla(3, U3, (1, 2, 3))
    g_rev = MarkedGraph(
        3,
        (1, 2, 3),
        [U3],
        [0, 0, 0],
        [(("h", 0), ("L", 3)), (("h", 1), ("L", 2)), (("h", 2), ("L", 1))],
    )
    part = LabelledPartition(3, [((1, 2, 3), U3)])
    assert reduce(g_rev).coefficient(part) == -1
    assert compare_sign(g, g_rev) == -1
    # even weight: orientations drop out
    g2 = corolla(2, LabelMonomial.unit(2), (1, 2, 3))
    g2_rev = MarkedGraph(
        2,
        (1, 2, 3),
        [LabelMonomial.unit(2)],
        [0, 0, 0],
        [(("h", 0), ("L", 3)), (("h", 1), ("L", 2)), (("h", 2), ("L", 1))],
    )
    assert compare_sign(g2, g2_rev) == 1


def test_loop_contracts_to_euler_label():
    g_loop = MarkedGraph(
        3,
        (1,),
        [U3],
        [0, 0, 0],
        [(("h", 0), ("h", 1)), (("h", 2), ("L", 1))],
    )
    part_e = LabelledPartition(3, [((1,), E3)])
    assert abs(reduce(g_loop).coefficient(part_e)) == 1


def test_vertex_swap_sign():
    # two univalent vertices, odd total degree: transposing them flips
    ga = MarkedGraph(
        3,
        (1, 2),
        [P1SQ, P2],
        [0, 1],
        [(("h", 0), ("L", 1)), (("h", 1), ("L", 2))],
    )
    gb = MarkedGraph(
        3,
        (1, 2),
        [P2, P1SQ],
        [0, 1],
        [(("h", 0), ("L", 2)), (("h", 1), ("L", 1))],
    )
    assert compare_sign(ga, gb) == -1
    pab = LabelledPartition(3, [((1,), P1SQ), ((2,), P2)])
    ca = reduce(ga).coefficient(pab)
    cb = reduce(gb).coefficient(pab)
    assert ca == -cb != 0


def _random_trivalent(rng, n):
    q = rng.randrange(0, 5)
    k = rng.randrange(0, 4)
    m = rng.randrange(0, 3)
    if n == 3:
        leaf_labels = [E3, P1, P2, P1SQ, P2 * P1]
    else:
        leaf_labels = [
            LabelMonomial.e(2),
            LabelMonomial.p(2, 1),
            LabelMonomial.e(2, 2),
        ]
    labels = [LabelMonomial.unit(n)] * k
    hev = []
    for i in range(k):
        hev.extend([i] * 3)
    for j in range(m):
        labels.append(rng.choice(leaf_labels))
        hev.append(k + j)
    pool = [("h", i) for i in range(len(hev))] + [
        ("L", x) for x in range(1, q + 1)
    ]
    if len(pool) % 2:
        labels.append(rng.choice(leaf_labels))
        hev.append(len(labels) - 1)
        pool.append(("h", len(hev) - 1))
    if not pool:
        return None
    rng.shuffle(pool)
    matching = [(pool[2 * i], pool[2 * i + 1]) for i in range(len(pool) // 2)]
    try:
        return MarkedGraph(n, range(1, q + 1), labels, hev, matching)
    except ValueError:
        return None


def test_contraction_order_confluence():
    rng = random.Random(7)
    count = 0
    tries = 0
    while count < 120 and tries < 3000:
        tries += 1
        n = rng.choice([2, 3])
        g = _random_trivalent(rng, n)
        if g is None:
            continue
        base = reduce(g, variant="P")
        for _ in range(3):
            shuffled = reduce(g, variant="P", _rng=rng)
            assert shuffled.coeffs == base.coeffs, g.to_json()
        count += 1
    assert count == 120


def _igraph():
    return MarkedGraph(
        3,
        (1, 2, 5, 6),
        [U3, U3],
        [0, 0, 0, 1, 1, 1],
        [
            (("h", 0), ("L", 1)),
            (("h", 1), ("L", 2)),
            (("h", 2), ("h", 3)),
            (("h", 4), ("L", 5)),
            (("h", 5), ("L", 6)),
        ],
    )


def _hgraph():
    return MarkedGraph(
        3,
        (1, 2, 5, 6),
        [U3, U3],
        [0, 0, 0, 1, 1, 1],
        [
            (("h", 0), ("L", 1)),
            (("h", 1), ("L", 5)),
            (("h", 2), ("h", 3)),
            (("h", 4), ("L", 6)),
            (("h", 5), ("L", 2)),
        ],
    )


def test_edge_slide_identity():
    assert reduce_trivalent(_igraph()) == reduce_trivalent(_hgraph())
    assert reduce(_igraph()) == reduce(_hgraph())


def test_lollipop_rewrites_to_euler_leaf():
    lolli = MarkedGraph(
        3,
        (1,),
        [U3],
        [0, 0, 0],
        [(("h", 0), ("h", 1)), (("h", 2), ("L", 1))],
    )
    normal = reduce_trivalent(lolli)
    ((g, c),) = normal.items()
    assert list(g.valences()) == [1]
    assert str(g.labels[0]) == "e"
    assert reduce(normal) == reduce(lolli)


def test_theta_with_tail():
    u1 = LabelMonomial.unit(1)
    theta = MarkedGraph(
        1,
        (1,),
        [u1, u1, u1],
        [0, 0, 0, 1, 1, 1, 2, 2, 2],
        [
            (("h", 0), ("L", 1)),
            (("h", 1), ("h", 3)),
            (("h", 2), ("h", 6)),
            (("h", 4), ("h", 7)),
            (("h", 5), ("h", 8)),
        ],
    )
    vec = reduce(theta)
    part = LabelledPartition(1, [((1,), LabelMonomial.e(1, 2))])
    assert abs(vec.coefficient(part)) == 1
    normal = reduce_trivalent(theta)
    ((g, c),) = normal.items()
    assert list(g.valences()) == [1]
    assert str(g.labels[0]) == "e^2"
    assert abs(c) == 1
    assert reduce(normal) == vec


def test_trivalent_rewriting_commutes_with_contraction():
    rng = random.Random(11)
    count = 0
    tries = 0
    while count < 60 and tries < 4000:
        tries += 1
        n = rng.choice([2, 3])
        g = _random_trivalent(rng, n)
        if g is None or not g.is_trivalent_mode():
            continue
        lhs = reduce(reduce_trivalent(g), variant="P")
        rhs = reduce(g, variant="P")
        assert lhs.coeffs == rhs.coeffs, g.to_json()
        count += 1
    assert count == 60


def test_rejects_non_trivalent():
    bad = corolla(3, P1SQ, (1, 2, 3, 4))
    with pytest.raises(NonTrivalentInput):
        reduce_trivalent(bad)


def test_variant_gate():
    pair = MarkedGraph(3, (1, 2), [], [], [(("L", 1), ("L", 2))])
    with pytest.raises(ForbiddenResult):
        reduce(pair, variant="Pprime")
    assert reduce(pair, variant="P0").coefficient(
        LabelledPartition(3, [((1, 2), U3)])
    ) == 1


def test_json_round_trip():
    g = _igraph()
    blob = g.to_json()
    assert parse_graph(blob) == g
    assert parse_graph(json.dumps(blob)) == g


def test_presentation_audit():
    report = presentation_audit(3, 5)
    assert report["ok"]
    row = [x for x in report["entries"] if x["legs"] == 1 and x["degree"] == 1]
    assert row == [
        {"legs": 1, "degree": 1, "graphs": 1, "partitions": 1, "match": True}
    ]
    assert presentation_audit(1, 1)["ok"]
