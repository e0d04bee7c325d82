import math
from collections import Counter

import pytest

from eqseq import (
    DomainError,
    PrimePair,
    audit_structure,
    build_partition,
    check_congruences,
    check_kernel_image,
    check_residue_multisets,
    check_translation,
    coset_index,
    cyclotomic_f2,
    derive_generators,
    euler_quotient,
    generate_threshold,
    generating_polynomial,
    two_coset_index,
)
from eqseq.gf2poly import Gf2Poly, _int_mod


def _coset_poly(coset) -> int:
    bits = 0
    for u in coset:
        bits |= 1 << u
    return bits


class TestBuildPartition:
    def test_shape_3_7(self, pair37):
        partition = build_partition(pair37)
        assert len(partition.cosets) == 7
        assert all(len(c) == 12 for c in partition.cosets)
        assert len(partition.non_units) == 63

    def test_membership(self, pair37):
        partition = build_partition(pair37)
        assert 1 in partition.cosets[0]
        assert 2 in partition.cosets[2]

    def test_disjoint_union(self, pair37):
        partition = build_partition(pair37)
        total = set(partition.non_units)
        for coset in partition.cosets:
            assert not (total & coset)
            total |= coset
        assert total == set(range(147))

    def test_requires_divisibility(self):
        with pytest.raises(DomainError):
            build_partition(PrimePair.create(5, 7))


class TestKernelImage:
    def test_3_7(self, pair37):
        gens = derive_generators(pair37)
        partition = build_partition(pair37)
        ok, problems = check_kernel_image(pair37, gens, partition)
        assert ok, problems

    def test_named_kernel_elements(self, pair37):
        gens = derive_generators(pair37)
        assert euler_quotient(pow(gens.g, 7, 147), pair37) == 0
        assert euler_quotient(gens.h, pair37) == 0
        assert gens.h == 50

    def test_kernel_cardinality(self, pair37):
        partition = build_partition(pair37)
        assert len(partition.cosets[0]) == 12


class TestTranslation:
    def test_3_7(self, pair37):
        partition = build_partition(pair37)
        ok, problems = check_translation(pair37, partition)
        assert ok, problems

    def test_specific_translation(self, pair37):
        # 2 lies in D_2, so 2 * D_3 = D_5
        partition = build_partition(pair37)
        image = {2 * v % 147 for v in partition.cosets[3]}
        assert image == partition.cosets[5]

    def test_identity_translation(self, pair37):
        partition = build_partition(pair37)
        for i in range(7):
            assert {1 * v % 147 for v in partition.cosets[i]} == partition.cosets[i]

    def test_ghat_shifts_kernel(self, pair37):
        partition = build_partition(pair37)
        gens = derive_generators(pair37)
        assert gens.ghat == 43
        assert {43 * v % 147 for v in partition.cosets[0]} == partition.cosets[1]

    def test_sampled_branch(self):
        # (3, 61) has period 11163, above the exhaustive limit
        pair = PrimePair.create(3, 61)
        partition = build_partition(pair)
        ok, problems = check_translation(pair, partition, seed=123)
        assert ok, problems


class TestResidueMultisets:
    def test_3_7(self, pair37):
        partition = build_partition(pair37)
        ok, problems = check_residue_multisets(pair37, partition)
        assert ok, problems

    def test_mod_p_multiset(self, pair37):
        partition = build_partition(pair37)
        counts = Counter(u % 3 for u in partition.cosets[0])
        assert counts == {1: 6, 2: 6}

    def test_mod_pq_bijection(self, pair37):
        partition = build_partition(pair37)
        residues = sorted(u % 21 for u in partition.cosets[0])
        assert residues == sorted(t for t in range(21) if math.gcd(t, 21) == 1)

    def test_mod_q2_multiset(self, pair37):
        partition = build_partition(pair37)
        counts = Counter(u % 49 for u in partition.cosets[0])
        subgroup = {pow(pow(5, 7, 49), i, 49) for i in range(6)}
        assert set(counts) == subgroup
        assert all(v == 2 for v in counts.values())


class TestCongruences:
    def test_3_7(self, pair37):
        partition = build_partition(pair37)
        ok, problems = check_congruences(pair37, partition)
        assert ok, problems

    def test_d0_mod_phi21(self, pair37):
        partition = build_partition(pair37)
        assert _int_mod(_coset_poly(partition.cosets[0]), cyclotomic_f2(21).bits) == 1

    def test_d4_mod_phi49(self, pair37):
        partition = build_partition(pair37)
        assert _int_mod(_coset_poly(partition.cosets[4]), cyclotomic_f2(49).bits) == 0

    def test_sum_mod_phi147(self, pair37):
        partition = build_partition(pair37)
        total = 0
        for coset in partition.cosets:
            total ^= _coset_poly(coset)
        assert _int_mod(total, cyclotomic_f2(147).bits) == 0
        # evaluation at 1 vanishes too: the unit count is even
        assert _int_mod(total, 0b11) == 0


class TestTwoCosetIndex:
    def test_examples(self, pair37, pair313, pair511):
        assert two_coset_index(pair37) == 2
        assert two_coset_index(pair313) == 5
        assert two_coset_index(pair511) == 3

    def test_nonzero_for_sweep(self):
        for p, q in [(3, 19), (7, 29), (11, 23)]:
            assert two_coset_index(PrimePair.create(p, q)) != 0

    def test_requires_divisibility(self):
        with pytest.raises(DomainError):
            two_coset_index(PrimePair.create(5, 7))


class TestFrobeniusAction:
    def test_doubling_shifts_cosets(self, pair37):
        # u -> 2u maps D_ell onto D_{ell+sigma}: 2 sits in D_sigma
        partition = build_partition(pair37)
        sigma = coset_index(2, pair37)
        for ell in range(7):
            doubled = {2 * u % 147 for u in partition.cosets[ell]}
            assert doubled == partition.cosets[(ell + sigma) % 7]


class TestUpperHalfPolynomial:
    def test_equals_generating_polynomial(self, pair37):
        # the sum of the upper-half coset polynomials is the generating
        # polynomial of the threshold sequence
        partition = build_partition(pair37)
        total = 0
        for ell in range(4, 7):
            total ^= _coset_poly(partition.cosets[ell])
        seq = generate_threshold(pair37)
        assert Gf2Poly(total) == generating_polynomial(seq)


class TestAuditStructure:
    @pytest.mark.parametrize("p,q", [(3, 7), (3, 13), (5, 11)])
    def test_all_checks_pass(self, p, q):
        report = audit_structure(PrimePair.create(p, q))
        assert report.all_ok, report.details
        assert report.details == {}

    def test_every_qualifying_pair_in_range(self):
        # the checks hold for every pair the closed form covers, up to the
        # sweep bound; quadratic grids switch to sampling above 10^4
        from eqseq import generate_threshold, generating_polynomial
        from eqseq.eulerq import build_table
        from golden import SWEEP_PAIRS

        for p, q in SWEEP_PAIRS:
            pair = PrimePair.create(p, q)
            table = build_table(pair)
            partition = build_partition(pair, table=table)
            gens = derive_generators(pair)

            assert all(len(c) == pair.phi_pq for c in partition.cosets), (p, q)
            assert len(partition.non_units) == pair.period - q * pair.phi_pq

            ok, problems = check_kernel_image(pair, gens, partition, table=table)
            assert ok, (p, q, problems)
            ok, problems = check_translation(pair, partition, gens)
            assert ok, (p, q, problems)
            ok, problems = check_residue_multisets(pair, partition, gens)
            assert ok, (p, q, problems)
            ok, problems = check_congruences(pair, partition)
            assert ok, (p, q, problems)

            # doubling the exponents advances every coset by sigma
            sigma = two_coset_index(pair)
            n = pair.period
            for ell in range(q):
                doubled = {2 * u % n for u in partition.cosets[ell]}
                assert doubled == partition.cosets[(ell + sigma) % q], (p, q, ell)

            # the upper-half coset polynomials sum to the generating polynomial
            total = 0
            for ell in range((q + 1) // 2, q):
                total ^= _coset_poly(partition.cosets[ell])
            assert total == generating_polynomial(generate_threshold(pair)).bits, (p, q)

    def test_json_keys(self, pair37):
        d = audit_structure(pair37).to_json_dict()
        assert list(d) == [
            "pair", "lemma2_ok", "lemma3_ok", "lemma4_ok", "lemma5_ok",
            "lemma6_ok", "lemma7_ok", "lemma8_ok", "lemma9_ok", "sigma",
            "details",
        ]
        assert d["sigma"] == 2

    def test_table_rendering(self, pair37):
        table = audit_structure(pair37).format_table()
        assert "lemma9" in table and "FAIL" not in table

    def test_requires_divisibility(self):
        with pytest.raises(DomainError):
            audit_structure(PrimePair.create(5, 7))
