"""
Unit tests for Schreier-Sims, orbits, blocks and normal closures.

Orders are cross-checked against sympy's permutation groups.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from src.algebra.blocks import UnionFind
from src.algebra.gf2 import gf2_rank, pack_bits, rotations
from src.algebra.groups import (
    PermGroup,
    alternating_group,
    circular_group,
    contains,
    embed_tuple,
    find_block_system,
    is_primitive,
    is_transitive,
    natural_group,
    normal_closure,
    orbit,
    orbits,
    projection_kernel,
    random_element,
    recognize_sym_alt,
    split_tuple,
    symmetric_group,
    tuple_order_bound,
)
from src.algebra.permutation import Permutation
from src.errors import BadBlockStructure, DegreeMismatch, NotTransitive
from src.models import SymAltKind
from tests.conftest import perm


def sympy_order(degree, generators):
    return PermutationGroup([SympyPermutation(list(g.images)) for g in generators] or
                            [SympyPermutation(list(range(degree)))]).order()


@st.composite
def generator_sets(draw):
    k = draw(st.integers(min_value=2, max_value=7))
    count = draw(st.integers(min_value=1, max_value=3))
    gens = [Permutation(draw(st.permutations(list(range(k))))) for _ in range(count)]
    return k, gens


class TestGroupOrder:
    """Orders of standard and random groups."""

    @pytest.mark.parametrize("k", range(1, 8))
    def test_symmetric_and_alternating(self, k):
        """Test |S_k| = k! and |A_k| = k!/2 (with A_1 trivial)."""
        assert symmetric_group(k).order() == math.factorial(k)
        assert alternating_group(k).order() == max(1, math.factorial(k) // 2)

    def test_trivial_group(self):
        """Test that a group without generators has order 1."""
        assert PermGroup(5, []).order() == 1

    @settings(max_examples=40, deadline=None)
    @given(generator_sets())
    def test_matches_sympy_without_bound(self, data):
        """Test deterministic Schreier-Sims against sympy."""
        k, gens = data
        assert PermGroup(k, gens).order() == sympy_order(k, gens)

    @settings(max_examples=40, deadline=None)
    @given(generator_sets())
    def test_matches_sympy_with_natural_bound(self, data):
        """Test the bounded random phase against sympy."""
        k, gens = data
        assert natural_group(k, gens).order() == sympy_order(k, gens)

    def test_degree_mismatch(self):
        """Test that generators of another degree are rejected."""
        with pytest.raises(DegreeMismatch):
            PermGroup(4, [perm("(1,2)", 3)])

    def test_two_state_circular_group(self, cyclic2_perms):
        """Test the circular group of the two-state cyclic example: (6!/2)^2 * 4."""
        assert circular_group(cyclic2_perms).order() == 518400

    def test_order_bound_is_a_multiple(self, cyclic3_perms):
        """Test that tuple_order_bound is a multiple of the generated order."""
        group = circular_group(cyclic3_perms)
        assert tuple_order_bound([cyclic3_perms], 6) % group.order() == 0


class TestMembership:
    """Sifting and random elements."""

    def test_transposition_not_in_alternating(self):
        """Test that (1,2) is in S_5 but not in A_5."""
        t = perm("(1,2)", 5)
        assert t in symmetric_group(5)
        assert t not in alternating_group(5)

    def test_random_elements_are_members(self):
        """Test that random_element returns members of the group."""
        group = PermGroup(6, [perm("(1,2,3)", 6), perm("(4,5,6)", 6)])
        chain = group.chain()
        rng = np.random.default_rng(1)
        samples = {random_element(chain, rng) for _ in range(200)}
        assert all(contains(chain, g) for g in samples)
        assert len(samples) == 9

    def test_contains_degree_mismatch(self):
        """Test that membership of a wrong-degree permutation is an error."""
        with pytest.raises(DegreeMismatch):
            contains(symmetric_group(4).chain(), perm("(1,2)", 5))


class TestRecognition:
    """Symmetric and alternating recognition."""

    def test_symmetric(self):
        """Test that a transposition and a long cycle give S_k."""
        assert recognize_sym_alt(natural_group(6, [perm("(1,2)", 6), perm("(1,2,3,4,5,6)", 6)])) == SymAltKind.SYMMETRIC

    def test_alternating(self):
        """Test that two 3-cycles generate A_4."""
        assert recognize_sym_alt(natural_group(4, [perm("(1,2,3)", 4), perm("(2,3,4)", 4)])) == SymAltKind.ALTERNATING

    def test_other(self):
        """Test that a cyclic group is neither."""
        assert recognize_sym_alt(natural_group(5, [perm("(1,2,3,4,5)", 5)])) == SymAltKind.OTHER


class TestOrbitsAndBlocks:
    """Orbits, transitivity and block systems."""

    def test_orbits(self):
        """Test orbits of a group with two orbits."""
        group = PermGroup(5, [perm("(1,2)", 5), perm("(3,4,5)", 5)])
        assert orbits(group) == [[0, 1], [2, 3, 4]]
        assert orbit(group, 3) == [2, 3, 4]
        assert not is_transitive(group)

    def test_block_system_of_klein_group(self):
        """Test that the regular Klein four-group is imprimitive."""
        group = PermGroup(4, [perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)])
        blocks = find_block_system(group)
        assert blocks is not None and not blocks.is_trivial()
        assert not is_primitive(group)

    def test_four_cycle_is_imprimitive(self):
        """Test that ⟨(1,2,3,4)⟩ is transitive and preserves {1,3}, {2,4}."""
        group = natural_group(4, [perm("(1,2,3,4)", 4)])
        assert is_transitive(group)
        assert not is_primitive(group)
        blocks = find_block_system(group)
        assert blocks.blocks() == [[0, 2], [1, 3]]
        assert blocks.block_count == 2

    def test_symmetric_group_is_primitive(self):
        """Test that S_5 has no nontrivial blocks."""
        assert is_primitive(symmetric_group(5))

    def test_intransitive_rejected(self):
        """Test that blocks are only sought for transitive groups."""
        with pytest.raises(NotTransitive):
            find_block_system(PermGroup(3, [perm("(1,2)", 3)]))


class TestNormalClosure:
    """Normal closures inside an ambient group."""

    def test_three_cycle_in_s5(self):
        """Test that the normal closure of a 3-cycle in S_5 is A_5."""
        closure = normal_closure(symmetric_group(5), perm("(1,2,3)", 5))
        assert closure.order() == 60

    def test_identity_seed(self):
        """Test that the normal closure of e is trivial."""
        assert normal_closure(symmetric_group(4), Permutation.identity(4)).order() == 1

    def test_klein_normal_in_s4(self):
        """Test that the double transpositions close to V_4 in S_4."""
        assert normal_closure(symmetric_group(4), perm("(1,2)(3,4)", 4)).order() == 4


class TestTuplesAndKernels:
    """Blockwise embedding and projection kernels."""

    def test_split_inverts_embed(self, cyclic2_perms):
        """Test that split_tuple undoes embed_tuple."""
        assert split_tuple(embed_tuple(cyclic2_perms), 6) == cyclic2_perms

    def test_projection_kernel(self):
        """Test the kernel of S_3 x C_2 onto its first factor."""
        e = Permutation.identity(3)
        gens = [
            embed_tuple([perm("(1,2,3)", 3), e]),
            embed_tuple([perm("(1,2)", 3), e]),
            embed_tuple([e, perm("(1,2)", 3)]),
        ]
        group = PermGroup(6, gens)
        kernel = projection_kernel(group, 1, 3)
        assert group.order() == 12
        assert kernel.order() == 2
        assert all(g.images[:3] == (0, 1, 2) for g in kernel.generators)

    def test_projection_kernel_bad_blocks(self):
        """Test that block sizes must divide the degree and the prefix must be proper."""
        group = symmetric_group(6)
        with pytest.raises(BadBlockStructure):
            projection_kernel(group, 1, 4)
        with pytest.raises(BadBlockStructure):
            projection_kernel(group, 2, 3)


class TestGF2:
    """Bit packing and rank."""

    def test_pack_bits(self):
        """Test that index 0 is the lowest bit."""
        assert pack_bits([1, 0, 1]) == 0b101

    def test_rotations(self):
        """Test the cyclic rotations of a bit vector."""
        assert rotations([1, 1, 0]) == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]

    @pytest.mark.parametrize("rows, expected", [([], 0), ([0, 0], 0), ([0b11, 0b01, 0b10], 2), ([0b110, 0b011, 0b101], 2), ([1, 2, 4], 3)])
    def test_rank(self, rows, expected):
        """Test GF(2) ranks of small row sets."""
        assert gf2_rank(rows) == expected


class TestUnionFind:
    """Union-find classes."""

    def test_classes(self):
        """Test merged classes come back sorted."""
        uf = UnionFind(range(5))
        assert uf.union(3, 1)
        assert not uf.union(1, 3)
        uf.union(4, 0)
        assert uf.classes() == [[0, 4], [1, 3], [2]]
