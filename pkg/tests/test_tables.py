"""Exhaustive audits of the three static relations."""

import itertools

import pytest

from revograph.model import (
    GRANT_COMPAT,
    GRANT_SCHEMES,
    GRANTS_OF,
    NEG_ISSUERS,
    PERMISSIONS,
    R_POS,
    STRONGER,
    Permission,
    Scheme,
    can_issue_negative,
    grant_compat,
    r_pos,
    stronger,
)

P = Permission


def test_r_pos_exact_rows():
    expected = {
        (P.TT, P.TT),
        (P.TT, P.TF),
        (P.TT, P.FT),
        (P.TT, P.FF),
        (P.TF, P.TF),
        (P.TF, P.FF),
    }
    got = {(a, b) for a in PERMISSIONS for b in PERMISSIONS if r_pos(a, b)}
    assert got == expected
    assert len(got) == 6


def test_r_pos_spot_values():
    assert r_pos(P.TT, P.FT)
    assert not r_pos(P.TF, P.FT)
    assert not r_pos(P.FF, P.FF)


def test_negative_issuers_exactly_tt_and_ft():
    got = {p for p in PERMISSIONS if can_issue_negative(p)}
    assert got == {P.TT, P.FT} == set(NEG_ISSUERS)
    assert not can_issue_negative(P.TF)


def test_stronger_exact_pairs():
    expected = {
        (P.TT, P.TF),
        (P.TT, P.FT),
        (P.TT, P.FF),
        (P.TF, P.FF),
        (P.FT, P.FF),
    }
    got = {(a, b) for a in PERMISSIONS for b in PERMISSIONS if stronger(a, b)}
    assert got == expected
    assert len(got) == 5


def test_stronger_is_strict_partial_order():
    for a in PERMISSIONS:
        assert not stronger(a, a)
    for a, b in itertools.product(PERMISSIONS, repeat=2):
        if stronger(a, b):
            assert not stronger(b, a)
    for a, b, c in itertools.product(PERMISSIONS, repeat=3):
        if stronger(a, b) and stronger(b, c):
            assert stronger(a, c)


def test_tf_and_ft_incomparable():
    assert not stronger(P.TF, P.FT)
    assert not stronger(P.FT, P.TF)


def test_grant_compat_exact_table():
    expected = {
        (P.TT, Scheme.GRANT_TT),
        (P.TF, Scheme.GRANT_TT),
        (P.FT, Scheme.GRANT_TT),
        (P.FF, Scheme.GRANT_TT),
        (P.TF, Scheme.GRANT_TF),
        (P.FF, Scheme.GRANT_TF),
        (P.FT, Scheme.GRANT_FT),
        (P.FF, Scheme.GRANT_FF),
    }
    got = {
        (p, s)
        for p in PERMISSIONS
        for s in GRANT_SCHEMES
        if grant_compat(p, s)
    }
    assert got == expected == set(GRANT_COMPAT)
    assert len(got) == 8


def test_grant_compat_spot_values():
    assert grant_compat(P.FF, Scheme.GRANT_TT)
    assert not grant_compat(P.TT, Scheme.GRANT_TF)
    assert grant_compat(P.FF, Scheme.GRANT_FF)


def test_grant_compat_rejects_non_grant_schemes():
    with pytest.raises(ValueError):
        grant_compat(P.TT, Scheme.WLD)


def test_stronger_matches_strict_grant_superset():
    """Stronger means: strictly more issuable, counting negative capability."""

    def grant_set(p):
        out = set(GRANTS_OF[p])
        if can_issue_negative(p):
            out.add("negative")
        return out

    for a, b in itertools.product(PERMISSIONS, repeat=2):
        assert stronger(a, b) == (grant_set(a) > grant_set(b))


def test_stronger_implies_positive_grant_subset():
    for a, b in itertools.product(PERMISSIONS, repeat=2):
        if stronger(a, b):
            assert GRANTS_OF[b] <= GRANTS_OF[a]
