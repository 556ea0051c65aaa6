from unittest import TestCase

from debruijn_codes import (
    CodeSpec,
    IdentifiabilityStatus,
    Theorem,
    code_2id,
    code_main_tid,
    code_mpt10_1id,
    code_odd_tid,
    code_simple_1id,
    construct,
    construct_auto,
    id_lower_bound,
    identifiability,
    twin_pair,
)
from debruijn_core import (
    ConstructionUnverifiedError,
    NoKnownConstructionError,
    NotIdentifiableError,
    PreconditionError,
    UnsupportedParametersError,
)
from debruijn_cover import metric_dimension
from debruijn_graph import GraphSpace, ball_ranks
from debruijn_verify import FailureKind, SignatureDecoder, id_signature, min_identifying_search, verify_identifying
from debruijn_words import Word


def W(text, d=2):
    return Word.parse(text, d)


def S(d, n):
    return GraphSpace(d, n)


class LowerBoundTest(TestCase):
    def test_values(self):
        self.assertEqual(id_lower_bound(S(2, 3)), 4)
        self.assertEqual(id_lower_bound(S(2, 5)), 16)
        self.assertEqual(id_lower_bound(S(3, 4)), 54)

    def test_bound_equals_metric_dimension(self):
        for d, n in ((2, 3), (2, 6), (3, 4), (5, 2)):
            self.assertEqual(id_lower_bound(S(d, n)), metric_dimension(S(d, n)))

    def test_searched_minima_respect_the_bound(self):
        for space, t in ((S(2, 3), 1), (S(2, 3), 2), (S(2, 4), 1), (S(3, 2), 1)):
            result = min_identifying_search(space, t)
            self.assertGreaterEqual(result.minimum, id_lower_bound(space))


class ConstructionMatrixTest(TestCase):
    def assertOptimalCode(self, code, t, expected=None):
        space = code.space
        self.assertEqual(len(code), expected if expected is not None else id_lower_bound(space))
        self.assertEqual(code.t, t)
        self.assertTrue(verify_identifying(code, t).valid, f"{code.theorem} {space} t={t}")
        # every prefix class keeps at least d-1 of its d words
        for c in range(space.order // space.d):
            kept = sum(1 for a in range(space.d) if c * space.d + a in code)
            self.assertGreaterEqual(kept, space.d - 1, f"{code.theorem} {space} class {c}")

    def test_simple(self):
        self.assertEqual([str(w) for w in code_simple_1id(S(2, 3)).words()], ["001", "011", "100", "110"])
        for d, n in ((2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (4, 3)):
            code = code_simple_1id(S(d, n))
            self.assertEqual(code.theorem, "simple1")
            self.assertOptimalCode(code, 1)
        self.assertEqual(len(code_simple_1id(S(3, 3))), 18)

    def test_periodic_one(self):
        for d, n in ((2, 3), (2, 4), (2, 5), (3, 3)):
            code = code_mpt10_1id(S(d, n))
            self.assertEqual(code.theorem, "mpt10")
            self.assertOptimalCode(code, 1)
        self.assertEqual(len(code_mpt10_1id(S(2, 4))), 8)
        self.assertEqual(len(code_mpt10_1id(S(3, 3))), 18)

    def test_two(self):
        for d, n in ((2, 4), (2, 6), (3, 5), (3, 7)):
            code = code_2id(S(d, n))
            self.assertEqual(code.theorem, "twoid")
            self.assertOptimalCode(code, 2)
        self.assertEqual(len(code_2id(S(3, 5))), 162)

    def test_two_odd_length_swaps_alternating_words(self):
        code = code_2id(S(3, 5))
        self.assertNotIn(W("01010", 3), code)
        self.assertIn(W("01011", 3), code)
        self.assertNotIn(W("12121", 3), code)
        self.assertIn(W("12122", 3), code)

    def test_two_odd_length_binary_is_rejected(self):
        with self.assertRaises(ConstructionUnverifiedError) as ctx:
            code_2id(S(2, 5))
        report = ctx.exception.report
        self.assertEqual(report.failure_kind, FailureKind.DUPLICATE_SIGNATURE)
        self.assertEqual(report.witnesses, (W("01010"), W("10101")))
        for n in (7, 9):
            with self.assertRaises(ConstructionUnverifiedError):
                code_2id(S(2, n))
        # the main construction covers these lengths at radius 2
        for n in (5, 7, 9):
            code = construct_auto(S(2, n), 2)
            self.assertEqual((code.theorem, len(code)), ("main", 2 ** (n - 1)))

    def test_main(self):
        for d, n, t in ((2, 5, 2), (2, 6, 3), (2, 7, 3), (3, 5, 2)):
            code = code_main_tid(S(d, n), t)
            self.assertEqual(code.theorem, "main")
            self.assertOptimalCode(code, t)
        self.assertEqual(len(code_main_tid(S(2, 6), 3)), 32)
        self.assertEqual(len(code_main_tid(S(3, 5), 2)), 162)

    def test_odd(self):
        for d, n, t, size in ((2, 5, 3, 24), (2, 7, 4, 80)):
            code = code_odd_tid(S(d, n), t)
            self.assertEqual(code.theorem, "odd")
            self.assertOptimalCode(code, t, size)

    def test_threaded_build_matches_serial(self):
        progress = []
        serial = code_main_tid(S(2, 6), 3)
        threaded = code_main_tid(S(2, 6), 3, workers=4, progress_callback=lambda c, t: progress.append(c))
        self.assertEqual(serial.ranks(), threaded.ranks())
        self.assertEqual(progress[-1], 64)


def matrix_spaces(limit):
    for d in (2, 3):
        n = 2
        while d ** n <= limit:
            yield S(d, n)
            n += 1


class FullMatrixTest(TestCase):
    """Every construction at every (d, n, t) it accepts, for d in {2, 3} and d^n <= 2^14."""

    def test_constructions_verify_and_decode(self):
        built = 0
        for space in matrix_spaces(2 ** 14):
            d, n = space.d, space.n
            for t in range(1, n + 1):
                for theorem in Theorem:
                    if theorem is Theorem.AUTO:
                        continue
                    label = f"{theorem.value} {space} t={t}"
                    if theorem is Theorem.TWOID and d == 2 and n % 2 and n >= 5 and t == 2:
                        with self.assertRaises(ConstructionUnverifiedError, msg=label):
                            construct(CodeSpec(space, t, theorem))
                        continue
                    try:
                        code = construct(CodeSpec(space, t, theorem))
                    except UnsupportedParametersError:
                        continue
                    built += 1
                    extra = d ** t if theorem is Theorem.ODD else 0
                    self.assertEqual(len(code), id_lower_bound(space) + extra, label)
                    self.assertTrue(verify_identifying(code, t).valid, label)
                    decoder = SignatureDecoder(code, t)
                    for v in space.vertices():
                        self.assertEqual(decoder.decode(id_signature(code, v, t)), v, label)
        self.assertGreater(built, 50)


class ConstructionErrorsTest(TestCase):
    def test_simple_needs_odd_length_for_binary(self):
        with self.assertRaises(UnsupportedParametersError) as ctx:
            code_simple_1id(S(2, 4))
        self.assertEqual(ctx.exception.hint, "mpt10")
        with self.assertRaises(UnsupportedParametersError):
            code_simple_1id(S(3, 1))

    def test_periodic_one_needs_three_letters(self):
        with self.assertRaises(UnsupportedParametersError) as ctx:
            code_mpt10_1id(S(3, 2))
        self.assertEqual(ctx.exception.hint, "simple1")

    def test_periodic_one_as_printed_is_oversized(self):
        with self.assertRaises(ConstructionUnverifiedError) as ctx:
            code_mpt10_1id(S(2, 4), literal_second_set=True)
        self.assertIn("12", str(ctx.exception))
        self.assertIsNotNone(ctx.exception.report)

    def test_two_needs_four_letters(self):
        with self.assertRaises(UnsupportedParametersError):
            code_2id(S(2, 3))

    def test_main_hints(self):
        cases = (((2, 4), 2, "twoid"), ((2, 5), 3, "odd"), ((2, 6), 1, "mpt10"), ((2, 4), 3, None))
        for (d, n), t, hint in cases:
            with self.assertRaises(UnsupportedParametersError) as ctx:
                code_main_tid(S(d, n), t)
            self.assertEqual(ctx.exception.hint, hint)

    def test_odd_needs_matching_length(self):
        with self.assertRaises(UnsupportedParametersError):
            code_odd_tid(S(2, 6), 3)
        with self.assertRaises(UnsupportedParametersError):
            code_odd_tid(S(2, 3), 2)


class TwinTest(TestCase):
    def test_closed_form_witness(self):
        self.assertEqual(twin_pair(S(2, 4), 3), (W("0101"), W("0100")))

    def test_full_radius(self):
        u, v = twin_pair(S(2, 3), 3)
        self.assertNotEqual(u, v)
        self.assertEqual(ball_ranks(S(2, 3), u, 3).tolist(), ball_ranks(S(2, 3), v, 3).tolist())

    def test_radius_beyond_length_falls_back_to_search(self):
        self.assertEqual(twin_pair(S(2, 2), 5), (W("00"), W("01")))

    def test_identifiable_lengths_rejected(self):
        with self.assertRaises(UnsupportedParametersError):
            twin_pair(S(2, 6), 3)

    def test_twins_share_in_balls(self):
        for d, top in ((2, 12), (3, 7)):
            for n in range(2, top + 1):
                space = S(d, n)
                for t in range((n + 3) // 2, n + 1):
                    u, v = twin_pair(space, t)
                    self.assertNotEqual(u, v)
                    self.assertEqual(
                        ball_ranks(space, u, t).tolist(), ball_ranks(space, v, t).tolist(), f"{space} t={t}"
                    )


class DispatchTest(TestCase):
    def test_picks_the_covering_construction(self):
        cases = (
            ((2, 3), 1, "mpt10", 4),
            ((3, 2), 1, "simple1", 6),
            ((2, 4), 2, "twoid", 8),
            ((2, 6), 3, "main", 32),
            ((2, 5), 3, "odd", 24),
        )
        for (d, n), t, theorem, size in cases:
            code = construct_auto(S(d, n), t)
            self.assertEqual(code.theorem, theorem)
            self.assertEqual(len(code), size)

    def test_not_identifiable(self):
        with self.assertRaises(NotIdentifiableError) as ctx:
            construct_auto(S(2, 4), 3)
        self.assertEqual(ctx.exception.twins, (W("0101"), W("0100")))
        with self.assertRaises(NotIdentifiableError):
            construct_auto(S(2, 3), 5)

    def test_no_known_construction(self):
        with self.assertRaises(NoKnownConstructionError):
            construct_auto(S(2, 3), 2)
        with self.assertRaises(NoKnownConstructionError):
            construct_auto(S(2, 2), 1)

    def test_identifiability(self):
        status = identifiability(S(2, 6), 3)
        self.assertEqual((status.status, status.theorem), (IdentifiabilityStatus.IDENTIFIABLE, Theorem.MAIN))
        gap = identifiability(S(2, 3), 2)
        self.assertEqual((gap.status, gap.theorem), (IdentifiabilityStatus.IDENTIFIABLE, None))
        self.assertEqual(identifiability(S(9, 3), 2).status, IdentifiabilityStatus.UNKNOWN)
        twins = identifiability(S(2, 4), 3)
        self.assertEqual(twins.status, IdentifiabilityStatus.NOT_IDENTIFIABLE)
        self.assertEqual(twins.twins, (W("0101"), W("0100")))
        with self.assertRaises(PreconditionError):
            identifiability(S(2, 4), 0)

    def test_construct_by_tag(self):
        self.assertEqual(construct(CodeSpec(S(2, 5), 1, "simple1")).theorem, "simple1")
        self.assertEqual(construct(CodeSpec(S(2, 5), 2, Theorem.MAIN)).theorem, "main")
        self.assertEqual(construct(CodeSpec(S(2, 6), 2)).theorem, "twoid")
        self.assertEqual(construct(CodeSpec(S(2, 5), 2)).theorem, "main")
        self.assertEqual(construct(CodeSpec(S(3, 5), 2)).theorem, "twoid")

    def test_construct_rejects_mismatched_radius(self):
        with self.assertRaises(UnsupportedParametersError):
            construct(CodeSpec(S(2, 6), 2, "simple1"))
        with self.assertRaises(UnsupportedParametersError):
            construct(CodeSpec(S(2, 6), 3, "twoid"))

    def test_spec_validation(self):
        with self.assertRaises(PreconditionError):
            CodeSpec(S(2, 4), 0)
        with self.assertRaises(ValueError):
            CodeSpec(S(2, 4), 1, "bogus")
