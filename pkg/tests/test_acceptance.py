"""Acceptance criteria 1-7, each reporting one PASS/FAIL line."""

import random
import time

import pytest

from birendo.bipoly import UniPoly
from birendo.config import LineConfig, canonical_lines, classify_corollary, generate_example
from birendo.corpus import (
    line_class_corpus,
    matrices,
    random_affine,
    random_automorphism_word,
    random_ggen,
    random_hgen,
    random_vgen,
)
from birendo.endo import (
    PlaneEndo,
    compose,
    contracting_curves,
    fundamental_points,
    missing_lines,
    report,
)
from birendo.errors import NotBirational, OutOfClass
from birendo.genword import (
    GenWord,
    Ggen,
    Hgen,
    MatM,
    SacStd,
    Vgen,
    l_count,
    matM_factor,
    matM_product,
    to_endo,
    word_center,
    word_missing_set,
    word_n,
)
from birendo.sacfactor import AlphaVGH, VorG, classify, sac_factorize

CORPUS_SEED = 2024
CORPUS_SIZE = 200


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


@pytest.fixture(scope="module")
def corpus():
    t0 = time.perf_counter()
    words = line_class_corpus(CORPUS_SEED, CORPUS_SIZE)
    return words, time.perf_counter() - t0


def test_criterion_1_round_trip(capsys, corpus):
    words, gen_time = corpus
    t0 = time.perf_counter()
    failures = []
    for idx, w in enumerate(words):
        f = to_endo(w)
        try:
            fac = sac_factorize(f)
        except Exception as exc:
            failures.append((idx, repr(exc)))
            continue
        if to_endo(fac.word) != f or fac.n != word_n(w):
            failures.append((idx, f"n={fac.n} expected {word_n(w)}"))
    elapsed = time.perf_counter() - t0 + gen_time
    ok = not failures and elapsed < 60
    announce(
        capsys,
        1,
        ok,
        f"round-trip factorization of {len(words)} words, {len(failures)} failures, "
        f"{elapsed:.1f} s including {gen_time:.1f} s generation (limit 60 s)",
    )
    assert not failures, failures[:5]
    assert elapsed < 60


def test_criterion_2_invariants(capsys, corpus):
    words, _ = corpus
    problems = []
    lines_checked = 0
    for idx, w in enumerate(words):
        f = to_endo(w)
        c = len(contracting_curves(f).curves)
        q = len(word_missing_set(w))
        if q != c:
            problems.append((idx, f"q={q} c={c}"))
        if f.degree >= 2 and c > 2 * f.degree - 2:
            problems.append((idx, f"c={c} deg={f.degree}"))
        if f.degree == 1 and c != 0:
            problems.append((idx, "automorphism with contracting curves"))
        comp = word_missing_set(w)
        if all(C.deg == 1 for C in comp):
            lines_checked += 1
            raw = {ln.poly for ln in missing_lines(f).lines}
            if raw != comp:
                problems.append((idx, "missing set mismatch"))
    rng = random.Random(CORPUS_SEED)
    pairs = 0
    for w in words:
        if pairs == 100:
            break
        if len(w) < 2:
            continue
        k = rng.randint(1, len(w) - 1)
        g, f = to_endo(GenWord(list(w)[:k])), to_endo(GenWord(list(w)[k:]))
        lhs = fundamental_points(compose(g, f))
        rhs = fundamental_points(g) | {g(p) for p in fundamental_points(f)}
        if lhs != rhs or lhs != word_center(w):
            problems.append(("cent", w.to_text()))
        pairs += 1
    ok = not problems and pairs == 100
    announce(
        capsys,
        2,
        ok,
        f"q = c and c <= 2 deg - 2 on {len(words)} words, missing-set agreement on "
        f"{lines_checked} all-linear words, cent identity on {pairs} pairs, {len(problems)} violations",
    )
    assert not problems, problems[:5]
    assert pairs == 100


def _vgh_words(rng, count, max_degree=30):
    out = []
    while len(out) < count:
        v, g, h = random_vgen(rng), random_ggen(rng), random_hgen(rng)
        deg = v.to_endo().degree * g.to_endo().degree * h.to_endo().degree
        if deg <= max_degree:
            out.append(GenWord([v, g, h]))
    return out


def _first_claim_instances():
    out = []
    # p = 0 with ik != 0
    for M, m in [(MatM(1, 1, 1, 2), 1), (MatM(2, 1, 1, 1), 2), (MatM(1, 2, 1, 3), 1), (MatM(1, 0, 1, 1), 3)]:
        out.append(GenWord([Ggen(M), Hgen(m, UniPoly([0]))]))
    # k = 0 absorbs p
    for j, m, p in [(1, 2, [1]), (2, 1, [-3]), (0, 3, [1, 2, -1])]:
        out.append(GenWord([Ggen(MatM(1, j, 0, 1)), Hgen(m, UniPoly(p))]))
    # i = 0 absorbs p
    for ell, m, p in [(1, 1, [2]), (2, 2, [1, 1]), (0, 2, [-1])]:
        out.append(GenWord([Ggen(MatM(0, 1, 1, ell)), Hgen(m, UniPoly(p))]))
    return out


def _second_claim_instances():
    out = []
    for c, n, m in [(0, 1, 1), (1, 1, 2), (1, 2, 3), (-1, 2, 1), (2, 1, 3), (0, 3, 1), (-2, 3, 1), (1, 3, 2), (3, 2, 2), (-1, 1, 1)]:
        v = Vgen(UniPoly.from_roots([c] * n))
        out.append(((c, n, m), GenWord([v, Hgen(m, UniPoly([c]))])))
    return out


def test_criterion_3_theorem(capsys):
    t0 = time.perf_counter()
    problems = []

    # (a) a pencil of three lines
    w = GenWord([SacStd(1), Vgen(UniPoly.from_roots([1, 2]))])
    nf = classify(to_endo(w))
    a_ok = (
        nf.class_tag == "Sw"
        and isinstance(nf.variant, AlphaVGH)
        and nf.variant.alpha == 1
        and nf.core_word[0] == SacStd(1)
        and nf.verify()
    )
    if not a_ok:
        problems.append(("a", nf.to_json()))

    # (b) random v o gamma o h words
    tags = {"Sa": 0, "Saa": 0}
    for w in _vgh_words(random.Random(7), 50):
        f = to_endo(w)
        nf = classify(f)
        if nf.class_tag not in tags or not nf.verify():
            problems.append(("b", w.to_text(), nf.class_tag))
            continue
        tags[nf.class_tag] += 1
        if not classify_corollary(LineConfig(missing_lines(f).lines)).admissible:
            problems.append(("b-admissible", w.to_text()))
        if nf.class_tag == "Sa":
            core = nf.core_word
            if not isinstance(nf.variant, AlphaVGH) or nf.variant.alpha is not None or core is None:
                problems.append(("b-core", w.to_text()))
            elif not all(isinstance(g, (Vgen, Ggen, Hgen)) for g in core):
                problems.append(("b-core", w.to_text()))

    # (c) FirstClaim and SecondClaim families
    c_count = 0
    for w in _first_claim_instances():
        nf = classify(to_endo(w))
        c_count += 1
        if not (nf.class_tag == "Saa" and isinstance(nf.variant, VorG) and nf.verify()):
            problems.append(("c-first", w.to_text(), nf.class_tag))
        elif not isinstance(nf.variant.element, (Vgen, Ggen)):
            problems.append(("c-first-core", w.to_text()))
    exact = 0
    for (c, n, m), w in _second_claim_instances():
        nf = classify(to_endo(w))
        c_count += 1
        expected = Ggen(MatM(1, m, n, m * n + 1))
        if not (nf.class_tag == "Saa" and isinstance(nf.variant, VorG) and nf.verify()):
            problems.append(("c-second", w.to_text(), nf.class_tag))
        elif nf.variant.element != expected:
            problems.append(("c-second-core", w.to_text(), nf.variant.element.to_text()))
        else:
            exact += 1
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 30
    announce(
        capsys,
        3,
        ok,
        f"(a) Sw with alpha1 core: {a_ok}; (b) 50 v-gamma-h words -> Sa {tags['Sa']}, Saa {tags['Saa']}; "
        f"(c) {c_count} claim instances Saa, SecondClaim core exact {exact}/10; {elapsed:.1f} s (limit 30 s)",
    )
    assert not problems, problems[:5]
    assert elapsed < 30


CONFIG_CASES = [
    ("a", [0]),
    ("a", [0, 1]),
    ("a", [-1, 0, 2]),
    ("a", [0, 1, 3, 4]),
    ("b", [2]),
    ("b", [1, 2]),
    ("b", [0, 1, 5]),
    ("b", [-2, -1, 1, 3]),
    ("c", [1, 2]),
    ("c", [0, 1, 3]),
    ("d", [1, 2]),
    ("d", [0, 1, -1]),
]


def _s_of(kind, params):
    return len(params) if kind in "ab" else len(params) + 1


def test_criterion_4_configurations(capsys):
    problems = []
    seen = set()
    for kind, params in CONFIG_CASES:
        seen.add((kind, _s_of(kind, params)))
        w = generate_example(kind, params)
        target = set(canonical_lines(kind, params))
        if set(word_missing_set(w)) != target:
            problems.append((kind, params, "word"))
        raw = {ln.poly for ln in missing_lines(to_endo(w)).lines}
        if raw != target:
            problems.append((kind, params, "raw"))
        if classify_corollary(LineConfig(target)).corollary_type != kind:
            problems.append((kind, params, "type"))
    expected = {(k, s) for k in "ab" for s in range(1, 5)} | {(k, s) for k in "cd" for s in (3, 4)}
    ok = not problems and seen == expected
    announce(
        capsys,
        4,
        ok,
        f"{len(CONFIG_CASES)} generated configurations (types a-d, s in 1..4), {len(problems)} mismatches",
    )
    assert not problems, problems
    assert seen == expected


def test_criterion_5_factorial_closedness(capsys, corpus):
    words, _ = corpus
    rng = random.Random(CORPUS_SEED + 5)
    sandwich_fail, split_fail = [], []
    for w in words[:100]:
        # u acts on the target: affine so the missing curves stay lines
        u = GenWord([random_affine(rng)])
        v = random_automorphism_word(rng, 3)
        f = to_endo(u + w + v)
        try:
            fac = sac_factorize(f)
            if to_endo(fac.word) != f or fac.n != word_n(w):
                sandwich_fail.append(w.to_text())
        except Exception as exc:
            sandwich_fail.append((w.to_text(), repr(exc)))
    splits = 0
    for w in words:
        if splits == 100:
            break
        if len(w) < 2:
            continue
        k = rng.randint(1, len(w) - 1)
        for half in (GenWord(list(w)[:k]), GenWord(list(w)[k:])):
            f = to_endo(half)
            try:
                fac = sac_factorize(f)
                if to_endo(fac.word) != f or fac.n != word_n(half):
                    split_fail.append(half.to_text())
            except Exception as exc:
                split_fail.append((half.to_text(), repr(exc)))
        splits += 1
    ok = not sandwich_fail and not split_fail and splits == 100
    announce(
        capsys,
        5,
        ok,
        f"100 sandwiches u o w o v: {len(sandwich_fail)} failures; {splits} splits: {len(split_fail)} failures",
    )
    assert not sandwich_fail, sandwich_fail[:3]
    assert not split_fail, split_fail[:3]
    assert splits == 100


def test_criterion_6_negative_controls(capsys):
    square = PlaneEndo.parse("x^2 ; y")
    rep = report(square)
    non_birational = rep["non_contracted"] == ["x"] and rep["contracting"] == []
    try:
        sac_factorize(square)
        non_birational = False
    except NotBirational:
        pass

    # (x + y^2, y) o v_(x(x-1)): the missing curves become the parabolas
    # X = Y^2 and X = Y^2 + 1
    v = Vgen(UniPoly.from_roots([0, 1]))
    bent = compose(PlaneEndo.parse("x + y^2 ; y"), v.to_endo())
    out_of_class = True
    for fn in (classify, sac_factorize):
        try:
            fn(bent)
            out_of_class = False
        except OutOfClass:
            pass
    # (x, y + x^2) keeps vertical lines vertical, so composing with it stays in class
    literal = compose(PlaneEndo.parse("x ; y + x^2"), v.to_endo())
    stays = classify(literal).verify()
    ok = non_birational and out_of_class and stays
    announce(
        capsys,
        6,
        ok,
        f"(x^2, y) certified non-birational: {non_birational}; parabola missing curves -> OutOfClass: "
        f"{out_of_class}; (x, y + x^2) o v stays in class: {stays}",
    )
    assert non_birational and out_of_class and stays


def test_criterion_7_matrix_monoid(capsys):
    t0 = time.perf_counter()
    Ms = matrices(8)
    bad = []
    for M in Ms:
        if matM_product(matM_factor(M)) != M:
            bad.append(("product", M))
        if sac_factorize(Ggen(M).to_endo()).n != l_count(M):
            bad.append(("n", M))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 20
    announce(
        capsys,
        7,
        ok,
        f"{len(Ms)} matrices with entries <= 8: {len(bad)} mismatches, {elapsed:.1f} s (limit 20 s)",
    )
    assert not bad, bad[:5]
    assert elapsed < 20
