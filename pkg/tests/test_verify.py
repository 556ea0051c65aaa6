import itertools
from unittest import TestCase, mock

import debruijn_verify
from debruijn_codes import code_main_tid
from debruijn_core import Config, PreconditionError, ResourceLimitError, SearchBudgetError, SearchCancelled
from debruijn_graph import CodeSet, GraphSpace, SetKind, VertexSet, edges, vertex_index
from debruijn_verify import (
    FailureKind,
    Signature,
    SignatureDecoder,
    VerificationReport,
    automorphism_of,
    decode_signature,
    enumerate_automorphisms,
    id_signature,
    min_determining_search,
    min_dominating_search,
    min_identifying_search,
    min_resolving_search,
    signature_table,
    verify_determining,
    verify_dominating,
    verify_identifying,
    verify_resolving,
)
from debruijn_words import SymbolPermutation, Word, apply_symbol_perm, symbol_permutations


def W(text, d=2):
    return Word.parse(text, d)


def words_set(space, texts, **kwargs):
    return CodeSet.from_words(space, [W(x, space.d) for x in texts], **kwargs)


B23 = GraphSpace(2, 3)
SMALL_CODE = ["001", "011", "100", "110"]


class SignatureTest(TestCase):
    def setUp(self):
        self.code = words_set(B23, SMALL_CODE, t=1)

    def test_examples(self):
        self.assertEqual(id_signature(self.code, W("000"), 1).words(B23), [W("100")])
        self.assertEqual(id_signature(self.code, W("001"), 1).words(B23), [W("001"), W("100")])
        empty = VertexSet.empty(B23)
        for v in B23.vertices():
            self.assertEqual(len(id_signature(empty, v, 2)), 0)

    def test_signature_must_be_sorted(self):
        with self.assertRaises(PreconditionError):
            Signature((3, 1))
        self.assertEqual(Signature.of(B23, [W("100"), 1, W("001")]).ranks, (1, 4))
        with self.assertRaises(PreconditionError):
            Signature.of(B23, [8])

    def test_table_has_one_vertex_per_signature(self):
        table = signature_table(self.code, 1)
        self.assertEqual(len(table), 8)
        self.assertTrue(all(len(vertices) == 1 for vertices in table.values()))

    def test_decode(self):
        self.assertEqual(decode_signature(self.code, 1, [W("100")]), W("000"))
        self.assertEqual(decode_signature(self.code, 1, [W("001"), W("100")]), W("001"))
        self.assertIsNone(decode_signature(self.code, 1, [W(x) for x in SMALL_CODE]))
        self.assertIsNone(decode_signature(self.code, 1, []))

    def test_decode_inverts_signatures(self):
        for v in B23.vertices():
            self.assertEqual(decode_signature(self.code, 1, id_signature(self.code, v, 1)), v)

    def test_decode_reports_ambiguous_sets(self):
        not_identifying = words_set(B23, ["001", "010", "011", "100", "101", "110"])
        with self.assertRaises(PreconditionError):
            decode_signature(not_identifying, 2, id_signature(not_identifying, W("011"), 2))

    def test_decoder_builds_its_table_once(self):
        code = code_main_tid(GraphSpace(2, 6), 3)
        with mock.patch("debruijn_verify._signatures", wraps=debruijn_verify._signatures) as spy:
            decoder = SignatureDecoder(code, 3)
            decoded = [decoder.decode(id_signature(code, v, 3)) for v in code.space.vertices()]
        self.assertEqual(spy.call_count, 1)
        self.assertEqual(decoded, list(code.space.vertices()))

    def test_decoder_edge_cases(self):
        decoder = SignatureDecoder(self.code, 1)
        self.assertIsNone(decoder.decode([]))
        self.assertIsNone(decoder.decode([W(x) for x in SMALL_CODE]))
        not_identifying = words_set(B23, ["001", "010", "011", "100", "101", "110"])
        with self.assertRaises(PreconditionError) as ctx:
            SignatureDecoder(not_identifying, 2).decode(id_signature(not_identifying, W("011"), 2))
        self.assertIn("not 2-identifying", str(ctx.exception))


class IdentifyingOracleTest(TestCase):
    def test_small_code(self):
        report = verify_identifying(words_set(B23, SMALL_CODE), 1)
        self.assertTrue(report.valid)
        self.assertEqual(report.failure_kind, FailureKind.NONE)
        self.assertEqual(report.checked_count, 8)

    def test_both_loops_missing_is_rejected(self):
        report = verify_identifying(words_set(B23, ["001", "010", "011", "100", "101", "110"]), 2)
        self.assertFalse(report)
        self.assertEqual(report.failure_kind, FailureKind.DUPLICATE_SIGNATURE)
        self.assertEqual(len(report.witnesses), 2)

    def test_one_loop_missing_is_accepted(self):
        everything_but_000 = VertexSet.full(B23) - VertexSet.from_words(B23, [W("000")])
        self.assertTrue(verify_identifying(everything_but_000, 2).valid)

    def test_empty_signature(self):
        report = verify_identifying(words_set(B23, ["111"]), 1)
        self.assertEqual(report.failure_kind, FailureKind.EMPTY_SIGNATURE)
        self.assertEqual(report.witnesses, (W("000"),))

    def test_supersets_stay_valid(self):
        base = words_set(B23, SMALL_CODE).members
        for extra in itertools.combinations(range(8), 2):
            bigger = base | VertexSet.from_ranks(B23, extra)
            self.assertTrue(verify_identifying(bigger, 1).valid)

    def test_threaded_matches_serial(self):
        space = GraphSpace(2, 6)
        members = VertexSet.from_ranks(space, [r for r in range(space.order) if r % 2])
        progress = []
        serial = verify_identifying(members, 3)
        threaded = verify_identifying(members, 3, workers=3, progress_callback=lambda c, t: progress.append((c, t)))
        self.assertEqual(serial, threaded)
        self.assertEqual(progress[-1], (64, 64))

    def test_report_consistency(self):
        with self.assertRaises(PreconditionError):
            VerificationReport(True, FailureKind.UNDOMINATED)
        with self.assertRaises(PreconditionError):
            verify_identifying({1, 2}, 1)


class OtherOraclesTest(TestCase):
    def test_dominating(self):
        self.assertTrue(verify_dominating(words_set(B23, ["010", "011", "100"]), 1).valid)
        report = verify_dominating(words_set(B23, ["000"]), 1)
        self.assertEqual(report.failure_kind, FailureKind.UNDOMINATED)
        self.assertEqual(len(report.witnesses), 1)
        for t in range(4):
            self.assertTrue(verify_dominating(VertexSet.full(B23), t).valid)

    def test_resolving(self):
        self.assertTrue(verify_resolving(words_set(B23, ["001", "010", "101", "110"])).valid)
        report = verify_resolving(words_set(B23, ["001", "011", "101", "111"]))
        self.assertTrue(report.valid)
        self.assertEqual(report.checked_count, 28)
        bad = verify_resolving(words_set(B23, ["000", "001"]))
        self.assertEqual(bad.failure_kind, FailureKind.UNRESOLVED_PAIR)
        self.assertEqual(len(bad.witnesses), 2)

    def test_resolving_sets_keep_most_of_each_prefix_class(self):
        for size in range(9):
            for subset in itertools.combinations(range(8), size):
                if not verify_resolving(VertexSet.from_ranks(B23, subset)).valid:
                    continue
                for c in range(4):
                    self.assertTrue(2 * c in subset or 2 * c + 1 in subset, subset)

    def test_determining(self):
        self.assertTrue(verify_determining(words_set(B23, ["000"])).valid)
        report = verify_determining(VertexSet.empty(B23))
        self.assertEqual(report.failure_kind, FailureKind.NONTRIVIAL_STABILIZER)
        self.assertEqual(report.witnesses, (SymbolPermutation((1, 0)),))
        self.assertTrue(verify_determining(words_set(GraphSpace(5, 2), ["01", "23"])).valid)
        self.assertFalse(verify_determining(words_set(GraphSpace(5, 2), ["01", "22"])).valid)

    def test_determining_on_single_letter_words(self):
        space = GraphSpace(3, 1)
        self.assertFalse(verify_determining(words_set(space, ["0"])).valid)
        self.assertTrue(verify_determining(words_set(space, ["0", "1"])).valid)

    def test_determining_alphabet_cap(self):
        with self.assertRaises(ResourceLimitError):
            verify_determining(VertexSet.empty(GraphSpace(11, 1)))


class AutomorphismTest(TestCase):
    def test_census(self):
        for d, n, count in ((2, 2, 2), (2, 3, 2), (3, 2, 6)):
            space = GraphSpace(d, n)
            found = enumerate_automorphisms(space)
            self.assertEqual(len(found), count)
            induced = sorted(automorphism_of(space, sigma) for sigma in symbol_permutations(d))
            self.assertEqual(found, induced)

    def test_cap(self):
        with self.assertRaises(ResourceLimitError):
            enumerate_automorphisms(GraphSpace(2, 4))

    def test_symbol_permutations_preserve_edges(self):
        for d in (2, 3):
            for n in range(1, 5):
                space = GraphSpace(d, n)
                edge_set = {(vertex_index(u, space), vertex_index(v, space)) for u, v in edges(space)}
                for sigma in symbol_permutations(d):
                    image = automorphism_of(space, sigma)
                    for u, v in edge_set:
                        self.assertIn((image[u], image[v]), edge_set)

    def test_identity_and_rotation(self):
        self.assertEqual(apply_symbol_perm(SymbolPermutation.identity(3), W("012", 3)), W("012", 3))
        self.assertEqual(apply_symbol_perm(SymbolPermutation((1, 2, 0)), W("012", 3)), W("120", 3))


class IdentifyingSearchTest(TestCase):
    def test_radius_one(self):
        result = min_identifying_search(B23, 1)
        self.assertTrue(result.found)
        self.assertEqual(result.minimum, 4)
        self.assertTrue(verify_identifying(result.code, 1).valid)
        self.assertEqual(result.code.theorem, "search")
        self.assertIsNone(result.last_exhausted_size)

    def test_radius_two_needs_seven(self):
        result = min_identifying_search(B23, 2, collect_all=True)
        self.assertEqual(result.minimum, 7)
        self.assertEqual(result.code.ranks(), list(range(7)))
        self.assertEqual([c.ranks() for c in result.codes], [list(range(7)), list(range(1, 8))])
        self.assertEqual([level.size for level in result.levels], [4, 5, 6, 7])
        self.assertEqual(result.levels[-1].candidates, 8)
        self.assertEqual(result.last_exhausted_size, 6)

    def test_twins_end_the_search(self):
        result = min_identifying_search(B23, 3)
        self.assertFalse(result.found)
        self.assertEqual(result.twins, (W("000"), W("001")))
        self.assertEqual(result.levels, [])

    def test_twins_short_circuit_for_short_words(self):
        for d, n, t in ((2, 2, 2), (2, 4, 3), (3, 3, 3), (2, 5, 4), (2, 6, 4)):
            result = min_identifying_search(GraphSpace(d, n), t)
            self.assertFalse(result.found)
            self.assertIsNotNone(result.twins)

    def test_size_cap(self):
        result = min_identifying_search(B23, 2, size_cap=6)
        self.assertFalse(result.found)
        self.assertEqual(result.last_exhausted_size, 6)

    def test_binary_five_needs_sixteen(self):
        result = min_identifying_search(GraphSpace(2, 5), 1)
        self.assertEqual(result.minimum, 16)
        self.assertEqual(result.levels[0].candidates, 2 ** 16)
        self.assertTrue(verify_identifying(result.code, 1).valid)

    def test_budget(self):
        with mock.patch.object(Config, "SEARCH_CANDIDATE_CAP", 20):
            with self.assertRaises(SearchBudgetError) as ctx:
                min_identifying_search(B23, 2)
        self.assertEqual(ctx.exception.last_exhausted_size, 4)

    def test_cancel(self):
        with self.assertRaises(SearchCancelled):
            min_identifying_search(B23, 1, check_cancel=lambda: True)

    def test_bad_radius(self):
        with self.assertRaises(PreconditionError):
            min_identifying_search(B23, 0)


class SubsetSearchTest(TestCase):
    def test_dominating(self):
        self.assertEqual(min_dominating_search(B23).minimum, 3)
        self.assertEqual(min_dominating_search(GraphSpace(2, 4)).minimum, 6)
        self.assertEqual(min_dominating_search(GraphSpace(3, 2)).minimum, 3)

    def test_resolving(self):
        self.assertEqual(min_resolving_search(B23).minimum, 4)
        self.assertEqual(min_resolving_search(GraphSpace(3, 2)).minimum, 6)

    def test_determining(self):
        result = min_determining_search(B23)
        self.assertEqual(result.minimum, 1)
        self.assertEqual(result.last_exhausted_size, 0)
        self.assertEqual(min_determining_search(GraphSpace(3, 2)).minimum, 1)
        self.assertEqual(min_determining_search(GraphSpace(3, 1)).minimum, 2)

    def test_kinds(self):
        self.assertIs(min_dominating_search(B23).code.kind, SetKind.DOMINATING)
        self.assertIs(min_resolving_search(B23).code.kind, SetKind.RESOLVING)

    def test_budget(self):
        with mock.patch.object(Config, "SUBSET_SEARCH_CAP", 10):
            with self.assertRaises(SearchBudgetError):
                min_dominating_search(B23)
