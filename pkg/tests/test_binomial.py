import pytest
from hypothesis import given, settings, strategies as st

from modseq import binomial
from modseq.binomial import Lemma
from modseq.core import ModulusContext, binom_mod
from modseq.errors import ResourceLimitError, UsageError
from modseq.sequences import from_values

CTX4 = ModulusContext.of_prime_power(2, 2)
CTX8 = ModulusContext.of_prime_power(2, 3)
CTX9 = ModulusContext.of_prime_power(3, 2)


class TestBinSeq:
    def test_s0_is_ones(self):
        assert binomial.bin_seq(CTX4, 0).values == (1,)

    def test_period_law(self):
        # period p^(ell + k_s)
        assert binomial.bin_seq(CTX4, 5).period == 16
        assert binomial.bin_seq(CTX9, 4).period == 27

    @given(st.integers(1, 64))
    def test_spot_values_exact(self, s):
        f = binomial.bin_seq(CTX4, s)
        for n in range(0, f.period, 7):
            assert f.nth(n) == binom_mod(n, s, CTX4)

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            binomial.bin_seq(CTX4, 1 << 20, cap=1 << 10)

    def test_equals_primitive_of_one(self):
        from modseq.sequences import constant, primitive

        for s in (1, 3, 6):
            assert binomial.bin_seq(CTX4, s) == primitive(constant(4, 1), s)


class TestDoubleAlt:
    def test_double_example(self):
        h = from_values(11, [1, 2, 3, 4, 5, 6, 7, 8])
        d = binomial.double_seq(h, 2, 2)
        assert d.materialize(16) == [1, 2, 3, 4, 1, 2, 3, 4, 5, 6, 7, 8, 5, 6, 7, 8]

    def test_double_positional_read(self):
        h = from_values(11, [1, 2, 3, 4, 5, 6, 7, 8])
        d = binomial.double_seq(h, 2, 2)
        assert d.nth(2**3 + 2**2 + 3) == h.nth(2**2 + 3) == 8

    def test_alt_inserts_zero_blocks(self):
        h = from_values(11, [1, 2, 3, 4])
        a = binomial.alt_seq(h, 2, 1)
        assert a.materialize(8) == [0, 0, 1, 2, 0, 0, 3, 4]

    def test_period_scaling(self):
        h = from_values(4, [1, 2, 3, 0])
        assert binomial.double_seq(h, 2, 1).period == 8

    def test_rejects_bad_t(self):
        with pytest.raises(UsageError):
            binomial.double_seq(from_values(4, [1]), 2, 0)


class TestNuEquiv:
    def test_reflexive_and_scale_blind(self):
        f = from_values(4, [1, 2, 3, 0])
        assert binomial.nu_equiv(f, f, CTX4)
        # 1 and 3 share valuation 0; 2 has valuation 1
        g = from_values(4, [3, 2, 1, 0])
        assert binomial.nu_equiv(f, g, CTX4)

    def test_detects_zero_pattern_difference(self):
        assert not binomial.nu_equiv(
            from_values(4, [1, 0]), from_values(4, [1, 1]), CTX4)

    @given(st.integers(8, 40), st.integers(8, 40))
    def test_symmetric(self, s, t):
        f = binomial.bin_seq(CTX4, s)
        g = binomial.bin_seq(CTX4, t)
        assert binomial.nu_equiv(f, g, CTX4) == binomial.nu_equiv(g, f, CTX4)


class TestFindReductions:
    def test_all_p_minus_1_at_22(self):
        steps = binomial.find_reductions(CTX4, 22)  # 10110
        alt = [s for s in steps if s.lemma is Lemma.ALL_P_MINUS_1]
        assert len(alt) == 1
        assert alt[0].m == 1 and alt[0].s_prime == 10 and alt[0].scale_exponent == 1
        f = binomial.bin_seq(CTX4, 22)
        g = binomial.alt_seq(binomial.bin_seq(CTX4, 10), 2, 1)
        assert binomial.nu_equiv(f, g, CTX4)

    def test_all_zero_at_18(self):
        steps = binomial.find_reductions(CTX4, 18)  # 10010
        dz = [s for s in steps if s.lemma is Lemma.ALL_ZERO]
        assert len(dz) == 1
        assert dz[0].m == 0 and dz[0].s_prime == 10 and dz[0].scale_exponent == 3
        f = binomial.bin_seq(CTX4, 18)
        g = binomial.double_seq(binomial.bin_seq(CTX4, 10), 2, 3)
        assert binomial.nu_equiv(f, g, CTX4)

    def test_p_minus_1_zeros_at_27(self):
        steps = binomial.find_reductions(CTX4, 27)  # 11011
        pz = [s for s in steps if s.lemma is Lemma.P_MINUS_1_ZEROS]
        assert len(pz) == 1
        step = pz[0]
        assert step.s_prime == 15
        assert step.e_size == 2
        # full identity: bin_27 ~ Double(bin_15) + 2 * chi_E
        f = binomial.bin_seq(CTX4, 27)
        g = binomial.double_seq(binomial.bin_seq(CTX4, 15), 2, step.scale_exponent)
        chi = binomial.chi_e(CTX4, 27, step.m)
        assert binomial.nu_equiv(f, g.add(chi.scalar_mul(2)), CTX4)

    def test_small_s_has_none(self):
        assert binomial.find_reductions(CTX4, 5) == []

    def test_all_zero_subsumed_for_p2(self):
        # every all-zero window instance is also a (p-1)0...0 instance with
        # empty E at the window one position higher
        steps = binomial.find_reductions(CTX4, 18)
        pz = [s for s in steps if s.lemma is Lemma.P_MINUS_1_ZEROS]
        assert pz and pz[0].e_size == 0


class TestESet:
    def test_enumeration_matches_formula(self):
        for s, m in ((27, 0), (22, -1), (18, -1)):
            es = binomial.e_set(CTX4, s, m)
            assert es.size == binomial.e_size_formula(CTX4, s, m)

    def test_pattern_mismatch_rejected(self):
        with pytest.raises(UsageError):
            binomial.e_set(CTX4, 22, 1)  # window there is all (p-1)

    def test_zero_count_link_mod4(self):
        # for s = <10 b...> mod 4: |E_s| = 2^z(s) if b_(k-2) = 1 else 0
        for s in (22, 18, 19, 20, 26):
            ds = bin(s)[2:]
            if not ds.startswith("10"):
                continue
            es = binomial.e_set(CTX4, s, -1)
            expect = 2 ** ds.count("0") if ds[2] == "1" else 0
            assert es.size == expect


class TestApplyReduction:
    def test_bookkeeping_examples(self):
        st10 = binomial.bin_stats(CTX4, 10)
        st15 = binomial.bin_stats(CTX4, 15)
        s22 = [x for x in binomial.find_reductions(CTX4, 22)
               if x.lemma is Lemma.ALL_P_MINUS_1][0]
        derived = binomial.apply_reduction(s22, CTX4, st10)
        assert derived.zeros == st10.zeros + 2**5
        assert derived.pi == st10.pi

        s18 = [x for x in binomial.find_reductions(CTX4, 18)
               if x.lemma is Lemma.ALL_ZERO][0]
        derived = binomial.apply_reduction(s18, CTX4, st10)
        assert derived.zeros == 2 * st10.zeros
        assert derived.pi == tuple(2 * x for x in st10.pi)

        s27 = [x for x in binomial.find_reductions(CTX4, 27)
               if x.lemma is Lemma.P_MINUS_1_ZEROS][0]
        derived = binomial.apply_reduction(s27, CTX4, st15)
        assert derived.pi[1] == 2 * st15.pi[1] + 2
        assert derived.zeros == 2 * st15.zeros - 2

    @settings(deadline=None)
    @given(st.integers(16, 256))
    def test_derived_equals_direct(self, s):
        direct = binomial.bin_stats(CTX4, s)
        for step in binomial.find_reductions(CTX4, s):
            sprime = binomial.bin_stats(CTX4, step.s_prime)
            derived = binomial.apply_reduction(step, CTX4, sprime)
            assert (derived.pi, derived.zeros, derived.period) == \
                (direct.pi, direct.zeros, direct.period)


class TestReduceChain:
    @settings(deadline=None)
    @given(st.integers(0, 511))
    def test_exhaustive_small(self, s):
        chain = binomial.reduce_chain(CTX4, s)
        direct = binomial.bin_stats(CTX4, s)
        assert (chain.stats.pi, chain.stats.zeros, chain.stats.period) == \
            (direct.pi, direct.zeros, direct.period)

    def test_irreducible_terminal(self):
        chain = binomial.reduce_chain(CTX4, 5)
        assert chain.steps == () and chain.terminal_s == 5

    def test_complete_for_mod4(self):
        # every s >= 8 reduces below 8 for p=2, ell=2
        for s in range(8, 512):
            assert binomial.reduce_chain(CTX4, s).terminal_s < 8

    def test_tail_shift_consistency(self):
        # if s and s+i differ only below the deleted window digit, the same
        # window applies to both and (s+i)' = s' + i
        step = [x for x in binomial.find_reductions(CTX4, 22)
                if x.lemma is Lemma.ALL_P_MINUS_1][0]  # tail is bit 0 only
        assert step.m == 1
        match = [x for x in binomial.find_reductions(CTX4, 23)
                 if x.lemma is Lemma.ALL_P_MINUS_1 and x.m == 1]
        assert match and match[0].s_prime == step.s_prime + 1

        # wider tail: s = 44 = 101100 and 45, 46, 47 share the window at m=1
        base = [x for x in binomial.find_reductions(CTX4, 44)
                if x.lemma is Lemma.ALL_P_MINUS_1 and x.m == 1][0]
        for i in (1, 2, 3):
            match = [x for x in binomial.find_reductions(CTX4, 44 + i)
                     if x.lemma is Lemma.ALL_P_MINUS_1 and x.m == 1]
            assert match and match[0].s_prime == base.s_prime + i

    def test_other_prime_powers(self):
        for ctx, s_hi in ((CTX8, 300), (CTX9, 300)):
            for s in range(ctx.m, s_hi, 7):
                chain = binomial.reduce_chain(ctx, s, cap=1 << 20)
                direct = binomial.bin_stats(ctx, s, cap=1 << 20)
                assert (chain.stats.pi, chain.stats.zeros) == (direct.pi, direct.zeros)
