import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import stalk_sums
from tstrx.derived_window import StalkSum, standard_truncate
from tstrx.errors import ContainmentError, PreconditionError, SizeGuardExceeded, UnvalidatedPresentation
from tstrx.quiver_rep import enumerate_indecomposables, ext1_dim, parse_quiver
from tstrx.torsion import check_torsion_pair, enumerate_torsion_pairs, perp
from tstrx.tstructure import (
    TorsionChain,
    Verdict,
    Window,
    WindowData,
    aisle_member,
    canonical_coaisle_audit,
    chain_from_sets,
    coaisle_generators,
    coaisle_member,
    decreasing_chains,
    enumerate_chain_tstructures,
    extend_correspondence,
    hrs_tilt,
    lemma33_audit,
    present,
    restrict_correspondence,
    truncate,
    validate_chain,
)

A2 = parse_quiver("A2:R")


def everything(q):
    return set(enumerate_indecomposables(q))


class TestValidator:
    def test_constant_projective_simple(self, a2):
        q, S1, P1, S2 = a2
        r = validate_chain(chain_from_sets(q, 1, [{S2}, {S2}]))
        assert r.verdict is Verdict.ACCEPTED
        assert all(c.passed for c in r.checks)

    def test_not_decreasing(self, a2):
        q, S1, P1, S2 = a2
        r = validate_chain(chain_from_sets(q, 1, [{S2}, everything(q)]))
        assert r.verdict is Verdict.REJECTED
        assert r.check("decreasing").status == "fail"
        assert r.witnesses[0]["kind"] == "not_decreasing"

    def test_non_ext_split_constant_rejected_with_hom_witness(self, a2):
        q, S1, P1, S2 = a2
        r = validate_chain(chain_from_sets(q, 1, [{P1, S1}, {P1, S1}]))
        assert r.verdict is Verdict.REJECTED
        assert r.witnesses[0] == {"kind": "hom_nonvanishing", "source": "2:1,0", "target": "1:0,1", "dim": 1}
        cert = r.witnesses[1]
        assert cert["kind"] == "extension_closure"
        # outer terms of the triangle are aisle stalks, the middle term is not
        assert cert["triangle"] == ["2:1,0", "1:0,1", "1:1,1"]

    def test_not_torsion_class(self, a2):
        q, S1, P1, S2 = a2
        r = validate_chain(chain_from_sets(q, 1, [{P1}]))
        assert r.verdict is Verdict.REJECTED
        assert r.witnesses[0]["closure"] == "quotient"

    def test_cross_ext_without_certificate_is_not_verified(self, a2):
        q, S1, P1, S2 = a2
        r = validate_chain(chain_from_sets(q, 1, [{S1}, {S1}]))
        assert r.verdict is Verdict.NOT_VERIFIED
        assert r.check("extension_closure").passed
        assert r.check("cross_degree_ext").status == "fail"

    def test_reports_carry_reasons(self):
        for chain in decreasing_chains(A2, Window(1, 2)):
            r = validate_chain(chain)
            if r.verdict is not Verdict.ACCEPTED:
                assert r.witnesses or any(c.status == "fail" for c in r.checks)

    def test_accepted_iff_cross_ext(self):
        q = parse_quiver("A3:RR")
        for chain in decreasing_chains(q, Window(1, 2)):
            Fj = perp(q, chain.at(1))
            clean = all(ext1_dim(A, B) == 0 for A in chain.at(2) for B in Fj)
            assert (validate_chain(chain).verdict is Verdict.ACCEPTED) == clean

    def test_window_and_chain_shape(self, a2):
        q, S1, P1, S2 = a2
        with pytest.raises(ValueError):
            Window(2, 1)
        with pytest.raises(ValueError):
            TorsionChain(q, Window(1, 2), ({S2},))


class TestMembership:
    def test_hrs_examples(self, a2):
        q, S1, P1, S2 = a2
        ts = hrs_tilt(check_torsion_pair(q, {S2}), 1)
        assert aisle_member(ts, StalkSum.of((1, S2)))
        assert coaisle_member(ts, StalkSum.of((1, S1)))
        assert aisle_member(ts, StalkSum.of((-3, P1), (0, S1)))
        assert aisle_member(ts, StalkSum()) and coaisle_member(ts, StalkSum())

    def test_truncate_examples(self, a2):
        q, S1, P1, S2 = a2
        ts = hrs_tilt(check_torsion_pair(q, {S2}), 1)
        assert truncate(ts, StalkSum.of((1, P1))) == (StalkSum.of((1, S2)), StalkSum.of((1, S1)))
        X = StalkSum.of((0, S1))
        assert truncate(ts, X) == (X, StalkSum())
        Y = StalkSum.of((9, P1))
        assert truncate(ts, Y) == (StalkSum(), Y)

    def test_unvalidated_refused(self, a2):
        q, S1, P1, S2 = a2
        ts = present(chain_from_sets(q, 1, [{S1}, {S1}]))
        for fn in (aisle_member, coaisle_member, truncate):
            with pytest.raises(UnvalidatedPresentation):
                fn(ts, StalkSum())

    @pytest.mark.parametrize("spec", ["A2:R", "A3:RR", "A3:LR"])
    def test_accepted_coaisle_is_termwise_perp(self, spec):
        q = parse_quiver(spec)
        for ts in enumerate_chain_tstructures(q, Window(1, 2)):
            for j in range(-1, 5):
                assert coaisle_generators(ts, j) == perp(q, ts.chain.at(j))
            assert canonical_coaisle_audit(ts) == []

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_truncation_outputs(self, data):
        q = parse_quiver(data.draw(st.sampled_from(["A2:R", "A3:RR", "A3:RL"])))
        tss = enumerate_chain_tstructures(q, Window(1, 2))
        ts = data.draw(st.sampled_from(tss))
        X = data.draw(stalk_sums(q, lo=-1, hi=4))
        A, B = truncate(ts, X)
        assert aisle_member(ts, A) and coaisle_member(ts, B)
        for j in range(-1, 5):
            dims = [sum(M.dimvec[v] for d, M in Z if d == j) for Z in (A, B, X) for v in range(q.n)]
            n = q.n
            assert [a + b for a, b in zip(dims[:n], dims[n:2 * n])] == dims[2 * n:]
        nonzero = [t for t in X if aisle_member(ts, StalkSum.of(t)) and coaisle_member(ts, StalkSum.of(t))]
        assert nonzero == []

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_shift_equivariance(self, data):
        q = parse_quiver(data.draw(st.sampled_from(["A2:R", "A3:RL"])))
        chain = data.draw(st.sampled_from(list(decreasing_chains(q, Window(1, 2)))))
        s = data.draw(st.integers(-3, 3))
        ts, moved = present(chain), present(chain.shifted(s))
        assert ts.validated.verdict is moved.validated.verdict
        if ts.accepted:
            X = data.draw(stalk_sums(q))
            assert aisle_member(ts, X) == aisle_member(moved, X.shift(s))
            assert coaisle_member(ts, X) == coaisle_member(moved, X.shift(s))


class TestCorrespondence:
    def test_restrict_hrs(self, a2):
        q, S1, P1, S2 = a2
        data = restrict_correspondence(hrs_tilt(check_torsion_pair(q, {S2}), 1), 0, 1)
        assert data.aisle == (frozenset({S2}),) and data.coaisle == (frozenset({S1}),)

    def test_restrict_pure_shift(self, a2):
        q = a2[0]
        ts = present(chain_from_sets(q, 1, [everything(q)]))
        data = restrict_correspondence(ts, 0, 1)
        assert data.aisle == (frozenset(everything(q)),) and data.coaisle == (frozenset(),)

    def test_restrict_too_narrow(self, a2):
        q, S1, P1, S2 = a2
        ts = present(chain_from_sets(q, 1, [{S2}, {S2}]))
        with pytest.raises(ContainmentError) as exc:
            restrict_correspondence(ts, 0, 1)
        assert exc.value.witness == "2:0,1"
        with pytest.raises(ContainmentError):
            restrict_correspondence(ts, 1, 2)

    def test_extend_examples(self, a2):
        q, S1, P1, S2 = a2
        ts = extend_correspondence(WindowData(q, Window(1, 1), ({S2},), ({S1},)))
        assert ts.accepted and ts.validated.check("coaisle_matches").passed
        shift = extend_correspondence(WindowData(q, Window(1, 2), (set(), set())))
        assert shift.accepted
        bad = extend_correspondence(WindowData(q, Window(1, 2), ({P1, S1}, {P1, S1})))
        assert bad.validated.verdict is Verdict.REJECTED

    def test_extend_wrong_coaisle(self, a2):
        q, S1, P1, S2 = a2
        ts = extend_correspondence(WindowData(q, Window(1, 1), ({S2},), ({S1, P1},)))
        assert ts.validated.verdict is Verdict.REJECTED
        assert ts.validated.witnesses[-1]["kind"] == "coaisle_mismatch"

    @pytest.mark.parametrize("spec", ["A2:R", "A3:RR"])
    def test_roundtrip(self, spec):
        q = parse_quiver(spec)
        for w in (1, 2):
            for ts in enumerate_chain_tstructures(q, Window(1, w)):
                data = restrict_correspondence(ts, 0, w)
                back = extend_correspondence(data)
                assert back.chain == ts.chain and back.accepted
                assert restrict_correspondence(back, 0, w) == data

    def test_hrs_trivial_pair_is_pure_shift(self, a2):
        q = a2[0]
        ts = hrs_tilt(check_torsion_pair(q, everything(q)), 1)
        assert ts.accepted and ts.chain.tight_bounds() == (1, 1)

    def test_hrs_middle_simple_a3(self):
        q = parse_quiver("A3:RR")
        (S,) = [M for M in enumerate_indecomposables(q) if M.dimvec == (0, 1, 0)]
        assert hrs_tilt(check_torsion_pair(q, {S}), 1).accepted


class TestEnumeration:
    def test_width_one_is_torsion_pairs(self):
        for spec, count in (("A2:R", 5), ("A3:RR", 14)):
            q = parse_quiver(spec)
            found = enumerate_chain_tstructures(q, Window(1, 1))
            assert len(found) == count
            assert {ts.chain.at(1) for ts in found} == {tp.tset for tp in enumerate_torsion_pairs(q)}

    def test_width_two_counts_match_cross_ext(self):
        q = A2
        expect = 0
        for chain in decreasing_chains(q, Window(1, 2)):
            Fj = perp(q, chain.at(1))
            if all(ext1_dim(A, B) == 0 for A in chain.at(2) for B in Fj):
                expect += 1
        assert len(enumerate_chain_tstructures(q, Window(1, 2))) == expect == 10

    def test_pure_shifts_present(self):
        q = parse_quiver("A3:RL")
        chains = {ts.chain.at(1) for ts in enumerate_chain_tstructures(q, Window(1, 1))}
        assert frozenset() in chains and frozenset(everything(q)) in chains

    def test_guard(self):
        with pytest.raises(SizeGuardExceeded):
            enumerate_chain_tstructures(A2, Window(1, 5))
        with pytest.raises(SizeGuardExceeded):
            enumerate_chain_tstructures(parse_quiver("A5:RRRR"), Window(1, 1))


class TestNestedTruncations:
    def test_heart_object(self, a2):
        q, S1, P1, S2 = a2
        r = lemma33_audit(0, 1, StalkSum.of((0, P1), (0, S1)))
        assert r["sides"]["2"][0] == "0" and not r["counterexample"]

    def test_mixed_object(self, a2):
        q, S1, P1, S2 = a2
        r = lemma33_audit(0, 1, StalkSum.of((0, S1), (1, P1), (2, S2)))
        assert all(r["holds"].values())

    def test_zero(self):
        r = lemma33_audit(0, 2, StalkSum())
        assert all(r["holds"].values())
        assert all(side == "0" for sides in r["sides"].values() for side in sides)

    def test_presentations(self, a2):
        q, S1, P1, S2 = a2
        inner = present(chain_from_sets(q, 1, [{S2}, set()]))
        outer = present(chain_from_sets(q, 1, [everything(q), {S2}]))
        X = StalkSum.of((1, P1), (2, P1), (2, S1))
        assert not lemma33_audit(inner, outer, X)["counterexample"]
        assert not lemma33_audit(0, outer, X)["counterexample"]

    def test_not_nested(self, a2):
        q, S1, P1, S2 = a2
        with pytest.raises(PreconditionError):
            lemma33_audit(1, 0, StalkSum.of((0, S1)))

    @settings(max_examples=50, deadline=None)
    @given(stalk_sums(A2, lo=-1, hi=4), st.sampled_from([(0, 1), (0, 2), (1, 3)]))
    def test_random_against_standard_truncation(self, X, shifts):
        r = lemma33_audit(*shifts, X)
        assert not r["counterexample"]
        s1, s2 = shifts
        assert standard_truncate(standard_truncate(X, s2)[0], s1)[1].render() == r["sides"]["1"][0]
