//! Acceptance criteria 1 to 11. Runs without the libtest harness so each
//! criterion prints one PASS or FAIL line.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use treeset::codes::{
    compose_codes, group_code_intersection, is_s_maximal_bifix, s_degree, CodeSet, CodingMorphism, GroupAutomatonSpec,
    GroupMorphism,
};
use treeset::decoding::{
    degree_multiplicativity, max_bifix_decode, sadic_extract, sadic_replay, verify_main_theorem, DecodingJob,
};
use treeset::freegroup::{fold, is_basis, replay, tame_decompose, Index, SignedWord, TameOutcome};
use treeset::generators::Morphism;
use treeset::iet::IntervalExchange;
use treeset::presets::{golden_angle, Preset};
use treeset::properties::{run_property, DEFAULT_SEED};
use treeset::returns::{derived_set, return_words};
use treeset::words::{is_tree_set, Alphabet, ConditionVerdict, FactorSet, GraphDefect, Word};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: treeset::Error) -> String {
    e.to_string()
}

fn preset(name: &str, depth: usize) -> Result<FactorSet, String> {
    Preset::by_name(name).and_then(|p| p.factor_set(depth)).map_err(err)
}

fn names(s: &FactorSet, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| s.format(w)).collect()
}

fn sorted(text: &str) -> Vec<String> {
    let set: BTreeSet<&str> = text.split_whitespace().collect();
    set.into_iter().map(str::to_string).collect()
}

fn level(s: &FactorSet, n: usize) -> Result<Vec<String>, String> {
    let mut v = names(s, s.factors_of_length(n).map_err(err)?);
    v.sort();
    Ok(v)
}

/// Plain string rewriting, independent of the library.
fn iterate(rules: &[(char, &str)], seed: char, len: usize) -> String {
    let mut w = seed.to_string();
    while w.len() < len {
        w = w.chars().map(|c| rules.iter().find(|r| r.0 == c).expect("rule").1).collect();
    }
    w.truncate(len);
    w
}

fn distinct_factors(text: &str, n: usize) -> usize {
    (0..=text.len() - n).map(|i| &text[i..i + n]).collect::<HashSet<_>>().len()
}

fn complexity() -> Check {
    let fib = preset("fibonacci", 25)?;
    let trib = preset("tribonacci", 25)?;
    let fib_text = iterate(&[('a', "ab"), ('b', "a")], 'a', 20000);
    let trib_text = iterate(&[('a', "ab"), ('b', "ac"), ('c', "a")], 'a', 20000);
    for n in 0..=25 {
        let (p, q) = (fib.complexity(n).map_err(err)?, trib.complexity(n).map_err(err)?);
        ensure(p == n + 1, format!("fibonacci p_{n} = {p}"))?;
        ensure(q == 2 * n + 1, format!("tribonacci p_{n} = {q}"))?;
        if n > 0 {
            ensure(distinct_factors(&fib_text, n) == p, format!("fibonacci prefix disagrees at {n}"))?;
            ensure(distinct_factors(&trib_text, n) == q, format!("tribonacci prefix disagrees at {n}"))?;
        }
    }
    Ok(())
}

fn tree_condition() -> Check {
    for name in ["fibonacci", "tribonacci"] {
        let s = preset(name, 22)?;
        let v = is_tree_set(&s, 20).map_err(err)?;
        ensure(v == ConditionVerdict::Holds { up_to: 20 }, format!("{name}: {v:?}"))?;
    }
    let periodic = preset("periodic-ab", 10)?;
    let v = is_tree_set(&periodic, 8).map_err(err)?;
    ensure(
        v == ConditionVerdict::FailsAt { word: Word::empty(), defect: GraphDefect::Disconnected },
        format!("periodic: {v:?}"),
    )?;
    let chain = preset("ac-bac-cb", 12)?;
    for w in ["bb", "bc", "cb", "cc"] {
        ensure(chain.contains(&chain.parse(w).map_err(err)?), format!("{w} missing"))?;
    }
    let v = is_tree_set(&chain, 10).map_err(err)?;
    ensure(v == ConditionVerdict::FailsAt { word: Word::empty(), defect: GraphDefect::Cycle }, format!("chain: {v:?}"))
}

fn return_sets() -> Check {
    let s = preset("golden-double-rotation", 14)?;
    for (w, want) in [("a", "cbba ccba ccbba"), ("b", "acb accb b"), ("c", "bac bbac c")] {
        let rd = return_words(&s, &s.member(w).map_err(err)?).map_err(err)?;
        ensure(rd.is_complete(), format!("returns of {w} incomplete"))?;
        let mut got = names(&s, &rd.first_returns);
        got.sort();
        ensure(got == sorted(want), format!("R({w}) = {got:?}"))?;
    }
    let t = preset("tribonacci", 20)?;
    let rd = return_words(&t, &t.member("a").map_err(err)?).map_err(err)?;
    let mut got = names(&t, &rd.first_returns);
    got.sort();
    ensure(got == sorted("a ba ca"), format!("tribonacci R(a) = {got:?}"))
}

fn derived_sets() -> Check {
    let s = preset("golden-double-rotation", 14)?;
    let f = CodingMorphism::parse(s.alphabet(), "a->bac; b->bbac; c->c").map_err(err)?;
    let d = derived_set(&s, &s.member("c").map_err(err)?, Some(&f)).map_err(err)?;
    ensure(d.set.depth() >= 3, format!("derived depth {}", d.set.depth()))?;
    // the figure reads bcc where the computation gives bca
    let figure = ["a b c", "ac bb bc ca cb", "aca acb bbb bbc bca cac cbb"];
    for (n, want) in figure.iter().enumerate() {
        let got = level(&d.set, n + 1)?;
        ensure(got == sorted(want), format!("derived level {}: {got:?}", n + 1))?;
    }
    let literal: HashSet<&str> = "a b c ac bb bc ca cb aca acb bbb bbc bcc cac cbb".split(' ').collect();
    let closed = |w: &&str| w.len() == 1 || (literal.contains(&w[1..]) && literal.contains(&w[..w.len() - 1]));
    let factorial = literal.iter().all(closed);
    ensure(!factorial, "literal figure list is factorial")?;
    ensure(!literal.contains("cc") && literal.contains("bcc"), "literal figure list changed")?;

    let t = preset("tribonacci", 24)?;
    let g = CodingMorphism::parse(t.alphabet(), "a->a; b->ba; c->ca").map_err(err)?;
    let d = derived_set(&t, &t.member("a").map_err(err)?, Some(&g)).map_err(err)?;
    ensure(d.set.depth() >= 10, format!("derived depth {}", d.set.depth()))?;
    let truncated = t.truncate(10);
    let image: HashSet<Vec<u8>> = truncated.iter().map(|w| w.iter().map(|&l| (l + 1) % 3).collect()).collect();
    let derived: HashSet<Vec<u8>> = d.set.truncate(10).iter().map(|w| w.letters().to_vec()).collect();
    ensure(image == derived, "derived set differs from the rotated letters")
}

fn iet_coding() -> Check {
    let alpha = golden_angle();
    let r = IntervalExchange::rotation(alpha.clone()).map_err(err)?;
    let x = r.natural_coding(&alpha, 200).map_err(err)?;
    let fib = iterate(&[('a', "ab"), ('b', "a")], 'a', 200);
    ensure(r.alphabet().format(&x) == fib, "rotation coding differs from the fixed point")?;

    let Preset::Iet(coding) = Preset::by_name("golden-double-rotation").map_err(err)? else {
        return Err("double rotation is not an exchange".into());
    };
    let y = coding.map.natural_coding(&coding.start, 21).map_err(err)?;
    let y = coding.map.alphabet().format(&y);
    ensure(y == "baccbaccbbacbbacbbacc", format!("y = {y}"))?;
    // y decodes the Fibonacci word by aa, ab, ba
    let pairs: String = fib
        .as_bytes()
        .chunks(2)
        .take(21)
        .map(|p| match p {
            b"aa" => 'a',
            b"ab" => 'b',
            _ => 'c',
        })
        .collect();
    ensure(pairs == y, "y is not the pair decoding of the Fibonacci word")?;

    let s = coding.map.factor_set(5).map_err(err)?;
    let figure = [
        "a b c",
        "ac ba bb cb cc",
        "acb acc bac bba cba cbb ccb",
        "acbb accb bacb bacc bbac cbac cbba ccba ccbb",
        "acbba accba accbb bacbb baccb bbacb bbacc cbacc cbbac ccbac ccbba",
    ];
    for (n, want) in figure.iter().enumerate() {
        let got = level(&s, n + 1)?;
        ensure(got == sorted(want), format!("level {}: {got:?}", n + 1))?;
    }
    Ok(())
}

fn free_group() -> Check {
    let a = Alphabet::from_chars("abc").map_err(err)?;
    let x: Vec<SignedWord> =
        ["ab", "acb", "acc"].iter().map(|w| SignedWord::parse(&a, w)).collect::<Result<_, _>>().map_err(err)?;
    ensure(fold(3, x.clone()).is_rose() && is_basis(&x, &a), "ab, acb, acc is not certified a basis")?;
    let code = CodeSet::parse(&a, "ba cba cca").map_err(err)?;
    match tame_decompose(&code).map_err(err)? {
        TameOutcome::Tame(d) => {
            ensure(d.steps.len() <= 6, format!("{} steps", d.steps.len()))?;
            let replayed: BTreeSet<Word> = replay(3, &d.steps).into_iter().collect();
            let words: BTreeSet<Word> = code.words().iter().cloned().collect();
            ensure(replayed == words, "replay does not give ba, cba, cca")?;
        }
        other => return Err(format!("ba, cba, cca: {other:?}")),
    }
    let code = CodeSet::parse(&a, "ab acb acc").map_err(err)?;
    let outcome = tame_decompose(&code).map_err(err)?;
    ensure(matches!(outcome, TameOutcome::NotTame { .. }), format!("ab, acb, acc: {outcome:?}"))?;
    let r = run_property("nielsen-schreier", 100, DEFAULT_SEED).map_err(err)?;
    ensure(r.holds(), format!("nielsen-schreier: {:?}", r.failures))
}

fn group_codes() -> Check {
    let s = preset("fibonacci", 40)?;
    let phi = GroupMorphism::parse(s.alphabet(), "a=(12); b=(13)", 3).map_err(err)?;
    ensure(phi.group().order() == 6, "image is not the symmetric group")?;
    let spec = GroupAutomatonSpec::regular(&phi).map_err(err)?;
    let x = group_code_intersection(&spec, &s).map_err(err)?;
    let g = fold(2, x.words().iter().map(|w| SignedWord::positive(w)));
    ensure(g.vertex_count() == 6 && g.is_complete() && g.index() == Index::Finite(6), format!("{g:?}"))?;
    ensure(is_s_maximal_bifix(x.words(), &s).map_err(err)?, "X is not S-maximal bifix")?;
    let ababa = s.member("ababa").map_err(err)?;
    let mut images = HashSet::new();
    for i in 0..=ababa.len() {
        let suffix = &ababa[i..];
        let proper_prefix = x.words().iter().any(|w| w.len() > suffix.len() && w.starts_with(suffix));
        ensure(proper_prefix, format!("{} is not a proper prefix of X", s.format(suffix)))?;
        images.insert(phi.eval(suffix));
    }
    ensure(images.len() == 6, format!("{} distinct images", images.len()))
}

fn main_theorem() -> Check {
    let s = preset("tribonacci", 240)?;
    let f = CodingMorphism::parse(s.alphabet(), "x->aa; y->ab; z->ac; t->ba; u->ca").map_err(err)?;
    let (t, report) = verify_main_theorem(&DecodingJob::new(s, f).map_err(err)?, 4).map_err(err)?;
    ensure(report.passed(), format!("{report:?}"))?;
    ensure(t.alphabet().len() == 5, "decoded alphabet")?;
    for n in 1..=8 {
        let p = t.complexity(n).map_err(err)?;
        ensure(p == 4 * n + 1, format!("decoded p_{n} = {p}"))?;
    }

    let s = preset("periodic-ab", 16)?;
    let f = CodingMorphism::parse(s.alphabet(), "u->ab; v->ba").map_err(err)?;
    let job = DecodingJob::new(s, f).map_err(err)?;
    let t = max_bifix_decode(&job).map_err(err)?;
    for w in t.iter() {
        ensure(w.iter().all(|&l| l == w.first().copied().unwrap_or(0)), format!("{} in the decoding", t.format(w)))?;
    }
    let (_, report) = verify_main_theorem(&job, 3).map_err(err)?;
    let recurrent = report.check("recurrent").ok_or("no recurrence check")?;
    ensure(!recurrent.passed, "u*, v* reported recurrent")
}

fn degrees() -> Check {
    let s = preset("fibonacci", 60)?;
    let x = CodeSet::parse(s.alphabet(), "aa abab abaaba baab baba").map_err(err)?;
    let z = CodeSet::parse(s.alphabet(), "a baab bab").map_err(err)?;
    let uvw = Alphabet::from_chars("uvw").map_err(err)?;
    let r = degree_multiplicativity(&s, &x, &z, Some(&uvw)).map_err(err)?;
    ensure((r.d_x, r.d_z, r.d_y) == (4, 2, Some(2)), format!("{r:?}"))?;
    ensure(r.kernel_z == ["a"] && r.kernel_y == ["v"], format!("{r:?}"))?;
    ensure(r.product_holds == Some(true) && r.z_divides_x, format!("{r:?}"))?;
    // X is f(Y) for the stated Y
    let f = CodingMorphism::parse(s.alphabet(), "u->a; v->baab; w->bab").map_err(err)?;
    let y = CodeSet::parse(&uvw, "uu uvu uw v wu").map_err(err)?;
    ensure(compose_codes(&y, &f).map_err(err)?.words() == x.words(), "f(Y) differs from X")?;

    let p = preset("periodic-ab", 24)?;
    let x = CodeSet::parse(p.alphabet(), "abab ba").map_err(err)?;
    let z = CodeSet::parse(p.alphabet(), "ab ba").map_err(err)?;
    ensure(s_degree(x.words(), &p).map_err(err)? == 3, "d_X")?;
    let r = degree_multiplicativity(&p, &x, &z, None).map_err(err)?;
    ensure((r.d_x, r.d_z) == (3, 2) && !r.z_divides_x, format!("{r:?}"))
}

fn sadic() -> Check {
    let a = Alphabet::from_chars("abc").map_err(err)?;
    let m = |t: &str| Morphism::parse_over(&a, t).map_err(err);
    let f = m("a->ac; b->b; c->c")?
        .compose(&m("a->a; b->ba; c->c")?)
        .map_err(err)?
        .compose(&m("a->a; b->b; c->cb")?)
        .map_err(err)?;
    ensure(f.format_rules() == "a->ac; b->bac; c->cbac", f.format_rules())?;
    let p = Preset::by_name("ac-bac-cbac").map_err(err)?;
    let gen = |d: usize| p.factor_set(d);
    let seq = sadic_extract(&gen, 3, 32, 256).map_err(err)?;
    for (n, step) in seq.steps().iter().enumerate() {
        ensure(step.basis, format!("step {n} is not a basis"))?;
        let steps = step.elementary.as_ref().ok_or(format!("step {n} is not tame"))?;
        ensure(replay(3, steps) == step.morphism.images(), format!("step {n} replay"))?;
    }
    let replayed = sadic_replay(&seq, seq.len() - 1, 8).map_err(err)?;
    ensure(replayed == p.factor_set(8).map_err(err)?, "replay differs at depth 8")
}

fn properties() -> Check {
    for name in ["factoriality", "parse-counts", "conjugation", "saturation", "fold-idempotence"] {
        let r = run_property(name, 1000, DEFAULT_SEED).map_err(err)?;
        ensure(r.holds() && r.passed == 1000, format!("{name}: {:?}", r.failures))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("complexity", complexity),
        ("tree condition", tree_condition),
        ("return words", return_sets),
        ("derived sets", derived_sets),
        ("interval exchange coding", iet_coding),
        ("free group", free_group),
        ("group codes", group_codes),
        ("maximal bifix decoding", main_theorem),
        ("degree multiplicativity", degrees),
        ("s-adic representation", sadic),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
