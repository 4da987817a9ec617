"""Action artifacts: bracoids, two-operation carriers, braid-relation maps."""

from __future__ import annotations

import numpy as np
import pytest

from hgcensus.actions import (
    SkewBrace,
    bracoid_from_subgroup,
    brace_from_regular,
    cocycle_decompose,
    realize_regular_subgroup,
    trivial_brace,
    ybe_solution,
)
from hgcensus.catalog import CayleyGroup, groups_of_order
from hgcensus.classify import stab_respecting_iso
from hgcensus.errors import ConsistencyError, StructureError
from hgcensus.holomorph import build_holomorph
from hgcensus.iso import IsoSearch
from hgcensus.perm import PermGroup, identity, parse_cycles
from hgcensus.table import GroupTable


def _c2_context():
    return build_holomorph(groups_of_order(2)[0])


def test_reduced_bracoid_from_each_record(census):
    c = census(6)
    for rec in c.records:
        b = bracoid_from_subgroup(rec.ctx, rec.rep)
        assert b.reduced
        assert b.degree == 6
        assert b.acting.order == rec.order
        assert np.array_equal(b.action[0], np.arange(6))
        d = b.to_json_dict()
        assert d["kind"] == "skew_bracoid"
        assert d["acting_order"] == rec.order


def test_nonreduced_bracoid_through_a_covering_map():
    ctx = _c2_context()
    g4 = CayleyGroup.from_elements("C4m", list(range(4)), lambda a, b: (a + b) % 4, 0, [1])
    e, s = identity(2), (1, 0)
    images = [e, s, e, s]
    b = bracoid_from_subgroup(ctx, ctx.left, delta=(g4, images))
    assert not b.reduced
    assert b.acting.order == 4
    assert b.degree == 2


def test_bracoid_covering_map_rejections():
    ctx = _c2_context()
    g4 = CayleyGroup.from_elements("C4m", list(range(4)), lambda a, b: (a + b) % 4, 0, [1])
    e, s = identity(2), (1, 0)
    with pytest.raises(StructureError):
        bracoid_from_subgroup(ctx, ctx.left, delta=(g4, [e, s, e]))  # short
    with pytest.raises(StructureError):
        bracoid_from_subgroup(ctx, ctx.left, delta=(g4, [s, e, s, e]))  # identity moved
    with pytest.raises(StructureError):
        bracoid_from_subgroup(ctx, ctx.left, delta=(g4, [e, s, s, e]))  # not a morphism
    with pytest.raises(StructureError):
        bracoid_from_subgroup(ctx, ctx.left, delta=(g4, [e, e, e, e]))  # not onto


def test_bracoid_requires_transitive_subgroup():
    g = groups_of_order(4)[0]
    ctx = build_holomorph(g)
    stab = PermGroup([p for p in ctx.aut.sorted_elements], 4)
    with pytest.raises(StructureError):
        bracoid_from_subgroup(ctx, stab)


def test_cocycle_decomposition_of_every_degree6_record(census):
    c = census(6)
    for rec in c.records:
        pi, gamma = cocycle_decompose(rec.ctx, rec.rep)
        assert len(pi) == rec.order
        aut_rows = {p for p in rec.ctx.aut.elements}
        for row in gamma:
            assert tuple(int(v) for v in row) in aut_rows
        if rec.regular:
            assert sorted(pi.tolist()) == list(range(6))
        if rec.rep.elements == rec.ctx.left.elements:
            # pure translations have trivial stabilizer parts
            assert all(tuple(int(v) for v in row) == identity(6) for row in gamma)


def test_cocycle_rejects_foreign_subgroup():
    ctx6 = build_holomorph(groups_of_order(6)[0])
    s3_natural = PermGroup([parse_cycles("(0 1 2)", 3), parse_cycles("(0 1)", 3)], 3)
    with pytest.raises(StructureError):
        cocycle_decompose(ctx6, s3_natural)


def test_brace_transport_of_the_two_translation_actions():
    g = groups_of_order(6)[1]  # S3
    ctx = build_holomorph(g)
    left = brace_from_regular(ctx, ctx.left)
    assert np.array_equal(left.add, left.circ)  # same operation twice
    right = brace_from_regular(ctx, ctx.right)
    assert np.array_equal(right.circ, g.table.T)  # opposite multiplication
    assert not np.array_equal(right.add, right.circ)


def test_brace_transport_requires_regularity():
    g = groups_of_order(6)[1]
    ctx = build_holomorph(g)
    with pytest.raises(StructureError):
        brace_from_regular(ctx, ctx.hol)


def test_brace_validation_catches_broken_identity():
    g = groups_of_order(6)[0]
    t = g.table.astype(np.int32)
    bad = t.copy()
    bad[[1, 2]] = bad[[2, 1]]  # rows swapped: 1 * 0 is no longer 1
    with pytest.raises((StructureError, ConsistencyError)):
        SkewBrace(6, t, bad).validate()


def test_trivial_brace_of_abelian_group_gives_the_flip_map():
    v4 = next(g for g in groups_of_order(4) if g.name == "C2xC2")
    sol = ybe_solution(trivial_brace(v4))
    for x in range(4):
        for y in range(4):
            assert tuple(sol.r[x, y]) == (y, x)


def test_trivial_brace_of_s3_gives_flip_conjugation():
    s3 = groups_of_order(6)[1]
    t = s3.table
    tinv = np.array([int(np.nonzero(t[a] == 0)[0][0]) for a in range(6)])
    sol = ybe_solution(trivial_brace(s3))
    for x in range(6):
        for y in range(6):
            assert tuple(sol.r[x, y]) == (y, int(t[t[tinv[y], x], y]))


def test_ybe_solutions_from_all_degree6_braces(census):
    c = census(6)
    seen_nontrivial_sigma = False
    for rec in c.records:
        if not rec.regular:
            continue
        sol = ybe_solution(brace_from_regular(rec.ctx, rec.rep))
        assert sol.order == 6
        d = sol.to_json_dict()
        assert len(d["r"]) == 36
        if any(sol.sigma[x].tolist() != list(range(6)) for x in range(6)):
            seen_nontrivial_sigma = True
    assert seen_nontrivial_sigma  # mixed-type classes exist at degree 6


def test_realize_regular_subgroup_identity_map(census):
    for rec in census(6).records:
        if rec.regular and rec.rep.elements == rec.ctx.left.elements:
            phi = {p: p for p in rec.rep.sorted_elements}
            out = realize_regular_subgroup(rec.rep, rec.ctx, phi)
            assert out.elements == rec.ctx.left.elements


def test_realize_regular_subgroup_across_types(census):
    # move one type's translations onto the points of an isomorphic record
    # living in the other type's holomorph
    cross = None
    for cls in census(6).classes + census(8).classes:
        names = {name for name, _ in cls.members}
        if len(names) > 1:
            cross = cls
            break
    assert cross is not None
    (na, ra), (nb, rb) = cross.members[0], next(
        m for m in cross.members if m[0] != cross.members[0][0]
    )
    phi = stab_respecting_iso(ra.rep, rb.rep)
    assert phi is not None
    realized = realize_regular_subgroup(rb.rep, rb.ctx, phi)
    n = rb.ctx.n
    assert realized.order == n
    assert len({p[0] for p in realized.elements}) == n
    # abstract type equals the second record's base group
    T = GroupTable.from_perms(realized.sorted_elements)
    assert IsoSearch(T, rb.ctx.group.as_table()).run("count") > 0


def test_realize_regular_subgroup_rejects_nonmorphism():
    g = groups_of_order(4)[0]
    ctx = build_holomorph(g)
    perms = ctx.left.sorted_elements
    phi = {p: p for p in perms}
    a, b = perms[1], perms[2]
    phi[a], phi[b] = phi[b], phi[a]
    with pytest.raises(StructureError):
        realize_regular_subgroup(ctx.left, ctx, phi)
