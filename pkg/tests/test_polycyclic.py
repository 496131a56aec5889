import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests.strategies import bicyclic_elements, poly_elements, words
from workbench.errors import AlphabetMismatch, NotSuffixPreserving, ParseError, WindowExceeded
from workbench.polycyclic import (
    BicyclicEndo,
    PolyElement,
    PolyHolElement,
    PolyPremorphism,
    SuffixMap,
    ZappaElement,
    affine_suffix_map,
    bicyclic_endo,
    bicyclic_hol_check,
    bicyclic_mul,
    bicyclic_to_poly,
    classify_ordered_functor,
    endo_classification_check,
    endo_classification_sweep,
    format_poly,
    heap_type_check_polycyclic,
    is_suffix_code,
    oracle_mul,
    parse_expression,
    parse_word,
    poly_mul,
    poly_natural_leq,
    premorphism_ideal_check,
    random_suffix_map,
    right_multiplication,
    suffix_leq,
    verify_bicyclic,
    verify_poly_arithmetic,
    verify_zappa,
    window_elements,
    word_leq,
    word_meet,
    words_up_to,
    zappa_compose,
    zappa_mu,
)

A, B = 0, 1


def el(u: str, v: str, n: int = 2) -> PolyElement:
    return PolyElement(n, parse_word(u, n), parse_word(v, n))


class TestWords:
    def test_parse(self):
        assert parse_word("ba", 2) == (B, A)
        assert parse_word("1", 2) == ()
        assert parse_word("", 2) == ()

    def test_parse_rejects_letter(self):
        with pytest.raises(ParseError) as err:
            parse_word("ac", 2)
        assert err.value.column == 2

    def test_suffix_order(self):
        assert word_leq((B, A), (A,))
        assert not word_leq((A,), (B, A))
        assert word_leq((A,), ())

    def test_meet(self):
        assert word_meet((B, A), (A,)) == (B, A)
        assert word_meet((A,), (B,)) is None
        assert word_meet(None, ()) is None

    def test_window(self):
        assert len(words_up_to(2, 3)) == 15
        assert len(window_elements(2, 2)) == 50
        assert window_elements(2, 2)[0].is_zero

    def test_suffix_code(self):
        assert is_suffix_code([(A,), (B,)])
        assert not is_suffix_code([(A, B), (B,)])
        assert is_suffix_code([(A, A), (B, A)])


class TestProducts:
    def test_cancel(self):
        assert poly_mul(el("", "ab"), el("b", "a")) == el("", "aa")

    def test_zero(self):
        assert poly_mul(el("", "a"), el("b", "")).is_zero

    def test_left_growth(self):
        # a^-1 (ba)^-1 = (baa)^-1
        assert poly_mul(el("a", ""), el("ba", "b")) == el("baa", "b")

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            poly_mul(PolyElement.one(1), PolyElement.one(2))
        with pytest.raises(AlphabetMismatch):
            PolyElement.pair(2, [2], [])

    def test_natural_order(self):
        assert suffix_leq(el("ba", "bb"), el("a", "b"))
        assert not suffix_leq(el("ba", "ab"), el("a", "b"))
        assert poly_natural_leq(el("ba", "bb"), el("a", "b"))
        assert suffix_leq(PolyElement.zero(2), PolyElement.one(2))

    @given(poly_elements(), poly_elements())
    def test_matches_oracle(self, x, y):
        assert poly_mul(x, y) == oracle_mul(x, y)

    @given(poly_elements(), poly_elements(), poly_elements())
    def test_associative(self, x, y, z):
        assert poly_mul(poly_mul(x, y), z) == poly_mul(x, poly_mul(y, z))

    @given(poly_elements())
    def test_inverse(self, x):
        assert poly_mul(poly_mul(x, x.inverse()), x) == x
        assert poly_mul(x, x.inverse()).is_idempotent

    @given(poly_elements(), poly_elements())
    def test_order_characterizations(self, x, y):
        assert poly_natural_leq(x, y) == suffix_leq(x, y)


class TestExpressions:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("(ab)^-1 a * b^-1 1", "0"),
            ("a^-1", "a^-1"),
            ("(ab)^-1 a", "(ab)^-1 a"),
            ("ab", "ab"),
            ("1", "1"),
            ("a a^-1", "1"),
            ("b^-1 a", "b^-1 a"),
            ("a^-1 a", "a^-1 a"),
            ("(a^-1)^-1", "a"),
            ("0 a", "0"),
        ],
    )
    def test_evaluate(self, text, expected):
        assert format_poly(parse_expression(text, 2)) == expected

    def test_bicyclic_alphabet(self):
        assert str(parse_expression("a a^-1 a", 1)) == "a"

    @pytest.mark.parametrize(
        "text, n, column",
        [("c", 2, 1), ("a + b", 2, 3), ("(a", 2, 3), ("a)", 2, 2), ("", 2, 1), ("b", 1, 1)],
    )
    def test_errors(self, text, n, column):
        with pytest.raises(ParseError) as err:
            parse_expression(text, n)
        assert err.value.column == column


class TestArithmeticReports:
    def test_small_window(self):
        report = verify_poly_arithmetic(2, 2)
        assert report.passed, report.to_text()
        assert report.check("associative").detail == "exhaustive"

    def test_bicyclic_window(self):
        report = verify_poly_arithmetic(1, 6)
        assert report.passed, report.to_text()
        assert report.stats["elements"] == 50

    @pytest.mark.slow
    def test_sampled_window(self):
        report = verify_poly_arithmetic(2, 3, samples=100, seed=1)
        assert report.passed, report.to_text()
        assert "sampled" in report.check("associative").detail


class TestBicyclic:
    def test_products(self):
        assert bicyclic_mul((1, 2), (1, 3)) == (1, 4)
        assert bicyclic_mul((0, 1), (2, 0)) == (1, 0)

    def test_as_polycyclic(self):
        assert bicyclic_to_poly((2, 1)) == PolyElement(1, (0, 0), (0,))

    def test_endomorphisms(self):
        assert bicyclic_endo(2, 1)((1, 2)) == (3, 5)
        assert bicyclic_endo(0, 1)((4, 7)) == (1, 1)
        assert bicyclic_endo(1, 0)((4, 7)) == (4, 7)

    def test_endo_composition(self):
        f, g = BicyclicEndo(2, 1), BicyclicEndo(3, 2)
        assert f.then(g) == BicyclicEndo(6, 5)
        assert f.then(g)((1, 1)) == g(f((1, 1)))

    def test_negative_parameters(self):
        with pytest.raises(ValueError):
            BicyclicEndo(-1, 0)

    def test_report(self):
        report = verify_bicyclic(6)
        assert report.passed, report.to_text()

    def test_holomorph(self):
        report = bicyclic_hol_check(4, kmax=3, pmax=3)
        assert report.passed, report.to_text()
        assert report.stats["hol_elements"] == 4 * 4 * 5

    @given(bicyclic_elements(), bicyclic_elements(), bicyclic_elements())
    def test_associative(self, x, y, z):
        assert bicyclic_mul(bicyclic_mul(x, y), z) == bicyclic_mul(x, bicyclic_mul(y, z))

    @given(bicyclic_elements(), bicyclic_elements())
    def test_matches_polycyclic(self, x, y):
        assert bicyclic_to_poly(bicyclic_mul(x, y)) == poly_mul(bicyclic_to_poly(x), bicyclic_to_poly(y))

    @given(st.integers(0, 4), st.integers(0, 4), bicyclic_elements(), bicyclic_elements())
    def test_endo_multiplicative(self, k, p, x, y):
        nu = BicyclicEndo(k, p)
        assert nu(bicyclic_mul(x, y)) == bicyclic_mul(nu(x), nu(y))


class TestSuffixMaps:
    def test_right_multiplication(self):
        rho = right_multiplication(2, 3, (B,))
        assert rho((A, A)) == (A, A, B)
        assert rho.transfer((A,)).agrees_with(SuffixMap.identity(2, 2)) is None

    def test_window(self):
        rho = right_multiplication(2, 2, (B,))
        with pytest.raises(WindowExceeded):
            rho((A, A, A))
        composite = rho.then(rho)
        assert composite.window == 1
        assert composite((A,)) == (A, B, B)

    def test_not_suffix_preserving(self):
        with pytest.raises(NotSuffixPreserving):
            SuffixMap(1, 1, {(): (0,), (0,): ()})

    def test_affine_map(self):
        sigma = [(A, A), (B, A)]
        phi = affine_suffix_map(2, 2, sigma, (B,))
        assert phi((B, A)) == (B, A, A, A, B)
        assert affine_suffix_map(2, 2, [(A,), (B,)], (B,)).agrees_with(right_multiplication(2, 2, (B,))) is None
        short = phi.restrict(1)
        assert short.window == 1
        assert short.agrees_with(phi) is None

    def test_random_maps_preserve_length(self):
        phi = random_suffix_map(2, 4, np.random.default_rng(3))
        assert all(len(phi(w)) == len(w) for w in words_up_to(2, 4))

    @given(words(2, 2), words(2, 2), st.integers(0, 1000))
    def test_transfer_product(self, u, v, seed):
        phi = random_suffix_map(2, 6, np.random.default_rng(seed))
        assert phi.transfer(u + v).agrees_with(phi.transfer(v).transfer(u)) is None
        assert phi(u + v) == phi.transfer(v)(u) + phi(v)


class TestZappa:
    def test_compose_with_right_multiplication(self):
        rng = np.random.default_rng(0)
        phi = random_suffix_map(2, 6, rng)
        x = ZappaElement(phi, (A,))
        y = ZappaElement(right_multiplication(2, 6, (B,)), (A, A))
        z = zappa_compose(x, y)
        assert z.u == (A, B, A, A)
        assert z.phi.agrees_with(phi) is None

    def test_mu(self):
        x = ZappaElement(SuffixMap.identity(2, 2), (B,))
        assert zappa_mu(x)((A,)) == (A, B)

    def test_report(self):
        report = verify_zappa(2, 2, samples=20, seed=5)
        assert report.passed, report.to_text()
        assert report.check("single_map_identities").informational


class TestPremorphisms:
    def test_constructors(self):
        c = PolyPremorphism.constant(2, (B, A), (A,))
        assert c(PolyElement.zero(2)) == el("ba", "ba")
        assert c(el("ab", "b")) == el("a", "a")
        with pytest.raises(ValueError):
            PolyPremorphism.constant(2, (A,), (B,))
        assert PolyPremorphism.c0(2)(el("a", "b")).is_zero

    def test_affine(self):
        f = PolyPremorphism.affine(2, [(A, A), (B, A)], (B,))
        assert f(el("a", "ab")) == el("aab", "aabab")
        assert f(PolyElement.zero(2)).is_zero
        assert f.label() == "[aa,ba]rho_b"

    def test_composition_rules(self):
        f = PolyPremorphism.affine(2, [(B,), (A,)])
        c = PolyPremorphism.constant(2, (A,), ())
        c0 = PolyPremorphism.c0(2)
        assert c.then(f) == PolyPremorphism.constant(2, (B,), ())
        assert f.then(c) == c
        assert c0.then(c) == PolyPremorphism.constant(2, (A,), (A,))
        assert c0.then(f) == c0
        assert f.then(c0) == c0
        assert f.then(f) == PolyPremorphism.identity(2)

    def test_classification(self):
        identity = PolyPremorphism.identity(2)
        zero_image, images = identity.window_images(2)
        assert classify_ordered_functor(2, images, zero_image, 2).kind == "affine"

        zero_image, images = PolyPremorphism.constant(2, (A, B), (B,)).window_images(2)
        found = classify_ordered_functor(2, images, zero_image, 2)
        assert found.kind == "constant"
        assert found.functor == PolyPremorphism.constant(2, (A, B), (B,))

        zero_image, images = PolyPremorphism.c0(2).window_images(2)
        assert classify_ordered_functor(2, images, zero_image, 2).kind == "c0"

    def test_not_a_functor(self):
        images = {w: (w if w != (A,) else None) for w in words_up_to(2, 2)}
        assert classify_ordered_functor(2, images, None, 2).kind == "not_ordered_functor"
        # swapping the empty word with a letter breaks the order
        images = {w: w for w in words_up_to(2, 1)}
        images[()] = (A,)
        images[(A,)] = ()
        assert classify_ordered_functor(2, images, None, 1).kind == "not_ordered_functor"

    def test_missing_images(self):
        with pytest.raises(WindowExceeded):
            classify_ordered_functor(2, {(): ()}, None, 1)

    def test_ideal_report(self):
        report = premorphism_ideal_check(2, 3, premorphism_window=2)
        assert report.passed, report.to_text()
        assert report.stats["constants"] == 5
        assert report.check("induces_premorphism").detail == "pairs of length <= 2"

    def test_ideal_report_narrow_window(self):
        report = premorphism_ideal_check(2, 3, premorphism_window=1)
        assert report.passed, report.to_text()
        assert report.check("induces_premorphism").detail == "pairs of length <= 1"

    @pytest.mark.slow
    def test_ideal_report_full_window(self):
        report = premorphism_ideal_check(2, 3)
        assert report.passed, report.to_text()
        assert report.check("induces_premorphism").detail == "pairs of length <= 3"


class TestEndomorphisms:
    @pytest.mark.parametrize(
        "sigma, meet_preserving, code",
        [([(A,), (B,)], True, True), ([(A, B), (B,)], False, False), ([(A, A), (B, A)], True, True)],
    )
    def test_check(self, sigma, meet_preserving, code):
        report = endo_classification_check(2, sigma, (), 3)
        assert report.passed, report.to_text()
        assert report.stats["meet_preserving"] is meet_preserving
        assert report.stats["suffix_code"] is code

    def test_collapsing_sigma(self):
        report = endo_classification_check(2, [(A,), (A,)], (B,), 2)
        assert report.passed
        assert report.stats["injective"] is False
        assert report.stats["meet_preserving"] is False

    def test_sweep(self):
        report = endo_classification_sweep(2, 2, image_len=1)
        assert report.passed, report.to_text()
        assert report.stats["sigmas"] == 9


class TestHeap:
    def test_constant_action(self):
        x = PolyHolElement(PolyPremorphism.constant(2, (B, A), (A,)), el("a", "b"))
        assert x.act(el("ab", "a")) == el("a", "b")
        # 0 goes to (w, pt) with w = ps
        assert x.act(PolyElement.zero(2)) == el("ba", "bb")

    def test_report(self):
        report = heap_type_check_polycyclic(2, 2, samples=20)
        assert report.passed, report.to_text()
        stricter = report.check("constant_zero_iff_w_eq_s_eq_t")
        assert stricter.informational
        assert not stricter.passed
        assert stricter.witness["w"] == stricter.witness["s"]
        assert stricter.witness["zero_instances_preserved"] is True
