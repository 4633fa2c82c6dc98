from __future__ import annotations

import pytest

from oracles import oracle_subsets
from termflux.lattice import (
    build_lattice,
    classify_shape,
    generate_reductions,
    is_admissible_3complex,
)
from termflux.model import Chunk, ComplexTerm, TermfluxError, reduce_term


def make_term(n: int, hints: tuple[str, ...] | None = None) -> ComplexTerm:
    hints = hints or tuple("noun" for _ in range(n))
    comps = tuple(Chunk(f"comp{i}", (), hints[i]) for i in range(n))
    return ComplexTerm(id=f"head {' '.join(c.strong_word for c in comps)}",
                       head=Chunk("head", (), "noun"), components=comps)


def term_fr():
    return ComplexTerm(
        id="mode de production biologique",
        head=Chunk("mode", (), "noun"),
        components=(
            Chunk("production", ("de",), "noun"),
            Chunk("biologique", (), "adjective"),
        ),
    )


class TestGenerateReductions:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_count_is_2_pow_n_minus_1(self, n):
        # oracle: enumerate head-retaining proper subsets by bitmask
        term = make_term(n)
        expected = {s for s in oracle_subsets(n) if len(s) < n}
        forms = generate_reductions(term)
        assert len(forms) == 2**n - 1
        assert {f.retained for f in forms} == expected

    def test_unique_signatures(self):
        forms = generate_reductions(make_term(4))
        sigs = [f.signature for f in forms]
        assert len(sigs) == len(set(sigs))

    def test_every_form_drops_and_keeps_chunks(self):
        for form in generate_reductions(make_term(5), include_expansion_only=True):
            kept = (1 if form.retain_head else 0) + len(form.retained)
            assert 1 <= kept < 6

    def test_expansion_only_behind_flag(self):
        term = term_fr()
        assert all(f.retain_head for f in generate_reductions(term))
        forms = generate_reductions(term, include_expansion_only=True)
        tails = [f for f in forms if not f.retain_head]
        assert len(tails) == 1
        assert tails[0].surface == "production biologique"
        assert tails[0].shape == "expansion_only"

    def test_deterministic_order(self):
        term = make_term(4)
        once = [f.signature for f in generate_reductions(term)]
        again = [f.signature for f in generate_reductions(term)]
        assert once == again


class TestBuildLattice:
    @pytest.mark.parametrize("n,nodes,edges", [(3, 8, 12), (4, 16, 32)])
    def test_reference_counts(self, n, nodes, edges):
        lat = build_lattice(make_term(n))
        assert len(lat.nodes) == nodes
        assert len(lat.edges) == edges

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_counts_match_subset_enumeration(self, n):
        # oracle: nodes are all subsets; edges drop exactly one element
        subsets = oracle_subsets(n)
        expected_edges = sum(len(s) for s in subsets)
        lat = build_lattice(make_term(n))
        assert len(lat.nodes) == len(subsets)
        assert len(lat.edges) == expected_edges == n * 2 ** (n - 1)

    def test_every_edge_drops_exactly_one_chunk(self):
        lat = build_lattice(make_term(4))
        size = {}
        for sig in lat.nodes:
            if sig == "full":
                size[sig] = 5
            else:
                parts = sig.split(",")
                size[sig] = len(parts)
        for src, dst in lat.edges:
            assert size[src] - size[dst] == 1

    def test_full_node_and_bare_head_present(self):
        lat = build_lattice(term_fr())
        assert "full" in lat.nodes
        assert "h" in lat.nodes
        assert lat.surfaces["full"] == "mode de production biologique"
        assert lat.surfaces["h"] == "mode"

    def test_expansion_node_hangs_off_full(self):
        lat = build_lattice(term_fr(), include_expansion_only=True)
        assert "1,2" in lat.nodes
        assert ("full", "1,2") in lat.edges
        assert len(lat.edges) == 2 * 2 ** (2 - 1) + 1


class TestClassifyShape:
    def test_linear_suffix(self):
        term = make_term(3)
        assert classify_shape(term, reduce_term(term, True, (0,))) == "linear_suffix"
        assert classify_shape(term, reduce_term(term, True, (0, 1))) == "linear_suffix"
        assert classify_shape(term, reduce_term(term, True, ())) == "linear_suffix"

    def test_non_linear(self):
        term = make_term(3)
        assert classify_shape(term, reduce_term(term, True, (1,))) == "non_linear"
        assert classify_shape(term, reduce_term(term, True, (0, 2))) == "non_linear"

    def test_expansion_only(self):
        term = make_term(3)
        form = reduce_term(term, False, (0, 1, 2))
        assert classify_shape(term, form) == "expansion_only"

    def test_wrong_parent_rejected(self):
        form = reduce_term(make_term(3), True, (0,))
        with pytest.raises(TermfluxError):
            classify_shape(term_fr(), form)


class TestAdmissibility:
    def test_three_strong_words_admissible(self):
        assert is_admissible_3complex(term_fr())

    def test_two_strong_words_not_admissible(self):
        term = ComplexTerm(
            id="degrado ambientale",
            head=Chunk("degrado", (), "noun"),
            components=(Chunk("ambientale", (), "adjective"),),
        )
        assert not is_admissible_3complex(term)

    def test_adverb_component_not_admissible(self):
        term = make_term(2, hints=("noun", "adverb"))
        assert not is_admissible_3complex(term)

    def test_adverb_free_three_component_term_admissible(self):
        assert is_admissible_3complex(make_term(3))
