//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact; the only numeric tolerance is the per-build time limit.

mod common;

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use codecoset::code::VectorFq;
use codecoset::equiv::{self, EquivVerdict};
use codecoset::matphi::{self, build_matphi};
use codecoset::matrix::{self, Row};
use codecoset::monomial::{self, AdmissibleOrder, OrderKind, Word};
use codecoset::rbasis::{self, Outcome};
use codecoset::{
    build_reduced_basis, decode_binary, decode_matphi, Code, DecodeResult, FieldElement, FieldSpec,
    MatphiTable, Permutation, ReducedBasis,
};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BUILD_LIMIT: Duration = Duration::from_secs(5);
const RANDOM_CODES: usize = 50;
const CONFLUENCE_WORDS: usize = 1000;
const BRUTE_FORCE_MAX_N: usize = 7;
const SEED: u64 = 0x00c0_de5e_7000;

const SIGMA1: &str = "(1,10,2,7,9,6,4,3,5)";
const SIGMA2: &str = "(1,2,6,9,10,4,5,3,7,8)";
const SIGMA_PRIME: &str = "[1,3,4,9,10,8,7,5,2,6]";

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr, $($msg:tt)+) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{}: {:?} != {:?}", format!($($msg)+), a, b));
        }
    }};
}

fn timed<T>(what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    ensure!(took < BUILD_LIMIT, "{what} took {took:?}");
    Ok(out)
}

fn drl(c: &Code) -> AdmissibleOrder {
    AdmissibleOrder::drl(nvars(c))
}

fn basis_of(c: &Code, order: &AdmissibleOrder, what: &str) -> Result<ReducedBasis, String> {
    timed(what, || build_reduced_basis(c, order))?.map_err(|e| format!("{what}: {e}"))
}

fn table_of(c: &Code, order: &AdmissibleOrder, what: &str) -> Result<MatphiTable, String> {
    timed(what, || build_matphi(c, order))?.map_err(|e| format!("{what}: {e}"))
}

fn pairs(g: &ReducedBasis) -> HashSet<(Word, Word)> {
    g.binomials().iter().map(|b| (b.head.clone(), b.tail.clone())).collect()
}

fn bits(v: &[u8]) -> VectorFq {
    VectorFq(v.iter().map(|&b| FieldElement(b)).collect())
}

fn criterion1() -> Check {
    // (code, expected listing, |N|, |G|)
    for (name, listing, n_len, g_len) in [
        ("cf2", "cf2", 64, 46),
        ("cf4", "cf4", 64, 41),
        ("c1", "c1", 8, 6),
        ("c2", "c2", 8, 9),
        ("sigma_cf2_1", "sigma_cf2_1", 64, 46),
        ("sigma_cf2_2", "sigma_cf2_2", 64, 45),
    ] {
        let c = code(name);
        let nv = nvars(&c);
        let g = basis_of(&c, &drl(&c), name)?;
        let exp = ExpectedBasis::load(listing);
        ensure_eq!(g.n_words().len(), n_len, "{name} |N|");
        ensure!(g.n_words().iter().cloned().collect::<HashSet<_>>() == exp.n_set(nv), "{name} N differs");
        ensure_eq!(g.len(), g_len, "{name} |G|");
        ensure!(pairs(&g) == exp.g_set(nv), "{name} G differs from the listing");
    }

    // the star listings use the permuted variable order
    for (name, sigma, star) in [
        ("sigma_cf2_1", SIGMA1, "sigma_cf2_1_star"),
        ("sigma_cf2_2", SIGMA2, "sigma_cf2_2_star"),
    ] {
        let c = code(name);
        let s = Permutation::parse(sigma, 10).map_err(|e| e.to_string())?;
        let order = AdmissibleOrder::with_variable_order(OrderKind::Drl, &s);
        let g = basis_of(&c, &order, star)?;
        ensure_eq!(g.len(), 46, "{star} |G'|");
        ensure!(pairs(&g) == ExpectedBasis::load(star).g_set(10), "{star} G' differs");
    }

    // CF3: the listing also prints one non-minimal entry, x3^2*x7^2
    let c = code("cf3");
    let g = basis_of(&c, &drl(&c), "cf3")?;
    let exp = ExpectedBasis::load("cf3");
    let mut listed = exp.g_set(7);
    ensure!(listed.remove(&(word("x3^2*x7^2", 7), word("x4*x6^2", 7))), "cf3 listing lacks the extra entry");
    ensure_eq!(g.n_words().len(), 81, "cf3 |N|");
    ensure!(g.n_words().iter().cloned().collect::<HashSet<_>>() == exp.n_set(7), "cf3 N differs");
    ensure_eq!(g.len(), 42, "cf3 |G|");
    ensure!(pairs(&g) == listed, "cf3 G differs from the listing");
    let cubes = g.binomials().iter().filter(|b| b.tail.is_one() && b.head.degree() == 3).count();
    ensure_eq!(cubes, 7, "cf3 cubes");
    Ok(())
}

fn check_table(c: &Code, order: &AdmissibleOrder, expected: &str, exact_flags: bool) -> Check {
    let t = table_of(c, order, expected)?;
    let exp = ExpectedMatphi::load(expected);
    let n: Vec<String> = t.words().iter().map(ToString::to_string).collect();
    ensure_eq!(n, exp.n, "{expected} N");
    for (i, e) in exp.table.iter().enumerate() {
        let v: Vec<u32> = t.vectors()[i].0.iter().map(|x| x.0 as u32).collect();
        ensure_eq!(v, e.vector, "{expected} vector {}", i + 1);
        let row: Vec<usize> = t.phi()[i].iter().map(|&j| j + 1).collect();
        ensure_eq!(row, e.phi_row, "{expected} phi row {}", i + 1);
        if exact_flags {
            ensure_eq!(t.flags()[i] as u8, e.flag, "{expected} flag {}", i + 1);
        }
    }
    ensure_eq!(t.error_capability(), exp.t, "{expected} t");
    Ok(())
}

fn criterion2() -> Check {
    check_table(&code("example1"), &AdmissibleOrder::lex(6), "example1", true)?;
    for name in ["c1", "c2"] {
        let c = code(name);
        check_table(&c, &drl(&c), name, false)?;
    }
    // example1 with positions 5 and 6 swapped: same phi rows, the last coset
    // has another minimal representative of the same syndrome
    let star = code("example1")
        .apply_permutation(&Permutation::parse("(5,6)", 6).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let t = table_of(&star, &AdmissibleOrder::lex(6), "example1_sigma")?;
    let exp = ExpectedMatphi::load("example1_sigma");
    for (i, e) in exp.table.iter().enumerate() {
        let row: Vec<usize> = t.phi()[i].iter().map(|&j| j + 1).collect();
        ensure_eq!(row, e.phi_row, "example1_sigma phi row {}", i + 1);
        let same = monomial::xi(&star, &t.words()[i]).unwrap() == monomial::xi(&star, &word(&exp.n[i], 6)).unwrap();
        ensure!(same, "example1_sigma entry {} is in another coset", i + 1);
    }
    ensure_eq!(t.error_capability(), exp.t, "example1_sigma t");
    Ok(())
}

fn criterion3() -> Check {
    let c = code("cf2");
    let g = basis_of(&c, &drl(&c), "cf2")?;
    let t = table_of(&c, &drl(&c), "cf2 table")?;
    let dec = |rx: &VectorFq| decode_binary(&g, &c, rx).map_err(|e| e.to_string());

    ensure_eq!(
        dec(&bits(&[1, 1, 1, 1, 0, 0, 0, 0, 1, 1]))?,
        DecodeResult::Corrected {
            error: bits(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            codeword: bits(&[0, 1, 1, 1, 0, 0, 0, 0, 1, 1]),
        },
        "first worked example"
    );
    ensure_eq!(
        dec(&bits(&[1, 1, 1, 0, 0, 0, 1, 1, 1, 0]))?,
        DecodeResult::TooManyErrors { canonical_weight: 3 },
        "second worked example"
    );

    let words = c.codewords().map_err(|e| e.to_string())?;
    ensure_eq!(words.len(), 16, "codewords");
    let mut cases = 0;
    for cw in &words {
        for pos in 0..=10 {
            let mut e = VectorFq::zero(10);
            if pos < 10 {
                e.0[pos] = FieldElement::ONE;
            }
            let r = dec(&cw.add(c.field(), &e))?;
            ensure_eq!(r, DecodeResult::Corrected { error: e, codeword: cw.clone() }, "single error");
            cases += 1;
        }
    }
    ensure_eq!(cases, 176, "cases");

    for rx in VectorFq::all(c.field(), 10) {
        let can = rbasis::canonical_form_binary(&g, &monomial::standardize(c.field(), &rx)).unwrap();
        let weight = monomial::psi(&c, &can).unwrap().weight();
        let b = dec(&rx)?;
        if weight > 1 {
            ensure_eq!(b, DecodeResult::TooManyErrors { canonical_weight: weight }, "beyond radius");
        }
        ensure_eq!(decode_matphi(&t, &c, &rx).map_err(|e| e.to_string())?, b, "cross-decoder on {rx:?}");
    }
    Ok(())
}

fn criterion4() -> Check {
    let steps = |tr: &rbasis::ReductionTrace| -> Vec<String> { tr.words.iter().map(ToString::to_string).collect() };

    let c3 = code("cf3");
    let g3 = basis_of(&c3, &drl(&c3), "cf3")?;
    let tr = rbasis::reduce_traced_default(&g3, &word("x1*x5*x7", 7));
    ensure_eq!(steps(&tr), ["x1*x5*x7", "x3*x7^2", "x1*x5*x7"], "cf3 chain");
    ensure_eq!(tr.outcome, Outcome::CycleDetected { start: 0 }, "cf3 outcome");
    let t3 = table_of(&c3, &drl(&c3), "cf3 table")?;
    ensure_eq!(
        matphi::canonical_form_cf(&t3, &word("x1*x5*x7", 7)).unwrap(),
        word("x3*x7^2", 7),
        "cf3 cf"
    );

    let c4 = code("cf4");
    let g4 = basis_of(&c4, &drl(&c4), "cf4")?;
    let tr = rbasis::reduce_traced_default(&g4, &word("x2*x4*x7", 10));
    ensure_eq!(steps(&tr), ["x2*x4*x7", "x6*x7*x8", "x1*x8*x10", "x6*x7*x8"], "cf4 chain");
    ensure_eq!(tr.outcome, Outcome::CycleDetected { start: 1 }, "cf4 outcome");
    let t4 = table_of(&c4, &drl(&c4), "cf4 table")?;
    ensure_eq!(
        matphi::canonical_form_cf(&t4, &word("x2*x4*x7", 10)).unwrap(),
        word("x6*x7*x8", 10),
        "cf4 cf"
    );
    Ok(())
}

fn criterion5() -> Check {
    let cf2 = code("cf2");
    let g = basis_of(&cf2, &drl(&cf2), "cf2")?;
    let s1 = code("sigma_cf2_1");
    let g1 = basis_of(&s1, &drl(&s1), "sigma_cf2_1")?;
    let st = equiv::level_stats(&g, 2);
    ensure_eq!(st.heads, vec![0, 2, 3, 4, 6, 6, 5, 4, 0, 0], "Heads(2) cf2");
    ensure_eq!(st.irreds, vec![9, 5, 4, 3, 3, 1, 2, 3, 0, 0], "Irreds(2) cf2");
    let st = equiv::level_stats(&g1, 2);
    ensure_eq!(st.heads, vec![0, 0, 2, 3, 4, 0, 5, 6, 4, 6], "Heads(2) sigma_cf2_1");
    ensure_eq!(st.irreds, vec![9, 0, 5, 4, 3, 0, 2, 1, 3, 3], "Irreds(2) sigma_cf2_1");

    let sp = Permutation::parse(SIGMA_PRIME, 10).map_err(|e| e.to_string())?;
    ensure!(equiv::verify_permutation(&cf2, &s1, &sp).unwrap(), "sigma' fails verify_permutation");
    ensure!(equiv::bases_equivalent(&g, &g1, &sp).unwrap(), "sigma' fails bases_equivalent");

    for target in ["sigma_cf2_1", "sigma_cf2_2"] {
        let c = code(target);
        match timed(target, || equiv::find_permutation(&cf2, &c))?.map_err(|e| e.to_string())? {
            EquivVerdict::Equivalent { witness } => {
                ensure!(equiv::verify_permutation(&cf2, &c, &witness).unwrap(), "{target}: bad witness {witness}")
            }
            other => return Err(format!("{target}: {other:?}")),
        }
    }
    let s2 = code("sigma_cf2_2");
    ensure_eq!((g.len(), basis_of(&s2, &drl(&s2), "sigma_cf2_2")?.len()), (46, 45), "basis sizes");

    let (c1, c2) = (code("c1"), code("c2"));
    let verdict = equiv::find_permutation(&c1, &c2).map_err(|e| e.to_string())?;
    ensure!(matches!(verdict, EquivVerdict::NotEquivalent { .. }), "c1/c2: {verdict:?}");
    ensure_eq!(c1.weight_distribution().unwrap(), vec![1u64, 0, 3, 0, 3, 0, 1], "c1 weights");
    ensure_eq!(c2.weight_distribution().unwrap(), vec![1u64, 0, 3, 0, 3, 0, 1], "c2 weights");
    Ok(())
}

fn random_code(rng: &mut StdRng, n: usize, r: usize) -> (Code, Vec<Row>) {
    let f = FieldSpec::prime(2).unwrap();
    loop {
        let rows: Vec<Row> = (0..r)
            .map(|_| (0..n).map(|_| FieldElement(rng.gen_range(0..2))).collect())
            .collect();
        if matrix::rank(&f, &rows) == r {
            return (Code::from_parity_check(f, rows.clone()).unwrap(), rows);
        }
    }
}

fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

fn row_scramble(rng: &mut StdRng, rows: &[Row]) -> Vec<Row> {
    let f = FieldSpec::prime(2).unwrap();
    let mut rows = rows.to_vec();
    let r = rows.len();
    for _ in 0..4 * r {
        let (a, b) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if a != b {
            let src = rows[b].clone();
            for (x, y) in rows[a].iter_mut().zip(src) {
                *x = f.add(*x, y);
            }
        }
    }
    rows.reverse();
    rows
}

fn random_properties(rng: &mut StdRng, index: usize) -> Check {
    let n = rng.gen_range(2..=10);
    let r = rng.gen_range(1..=n.min(6));
    let (c, rows) = random_code(rng, n, r);
    let tag = format!("random code {index} (n = {n}, n-k = {r})");
    let order = AdmissibleOrder::drl(n);
    let t = table_of(&c, &order, &tag)?;
    let g = basis_of(&c, &order, &tag)?;

    ensure_eq!(t.len(), 1usize << r, "{tag}: |N|");
    let members: HashSet<&Word> = t.words().iter().collect();
    for w in &t.words()[1..] {
        ensure!(w.support().any(|k| members.contains(&w.div_var(k).unwrap())), "{tag}: {w} breaks prefix closure");
    }
    for (i, row) in t.phi().iter().enumerate() {
        for (k, &j) in row.iter().enumerate() {
            let wx = t.words()[i].mul_var(k);
            ensure!(
                monomial::xi(&c, &t.words()[j]).unwrap() == monomial::xi(&c, &wx).unwrap(),
                "{tag}: phi({}, x{}) in the wrong coset",
                t.words()[i],
                k + 1
            );
        }
    }

    let heads: Vec<&Word> = g.binomials().iter().map(|b| &b.head).collect();
    for (i, a) in heads.iter().enumerate() {
        for (j, b) in heads.iter().enumerate() {
            ensure!(i == j || !a.divides(b), "{tag}: head {a} divides head {b}");
        }
    }
    for w in t.words() {
        for k in 0..n {
            let wx = w.mul_var(k);
            ensure!(members.contains(&wx) || heads.iter().any(|h| h.divides(&wx)), "{tag}: {wx} not covered");
        }
    }

    let mut pick_a = StdRng::seed_from_u64(rng.gen());
    let mut pick_b = StdRng::seed_from_u64(rng.gen());
    for _ in 0..CONFLUENCE_WORDS {
        let w = Word::from_exponents((0..n).map(|_| rng.gen_range(0..4)).collect());
        let can = rbasis::canonical_form_binary(&g, &w).unwrap();
        let a = rbasis::reduce_binary_with(&g, &w, |o| o[pick_a.gen_range(0..o.len())]).unwrap();
        let b = rbasis::reduce_binary_with(&g, &w, |o| o[pick_b.gen_range(0..o.len())]).unwrap();
        ensure!(a == can && b == can, "{tag}: {w} reduces to {a}, {b} and {can}");
        ensure!(members.contains(&can), "{tag}: Can({w}) = {can} outside N");
    }

    let other = Code::from_parity_check(c.field().clone(), row_scramble(rng, &rows)).unwrap();
    ensure!(other.same_code(&c), "{tag}: scrambled rows changed the code");
    let t2 = table_of(&other, &order, &tag)?;
    let g2 = basis_of(&other, &order, &tag)?;
    ensure!(t2.words() == t.words() && t2.phi() == t.phi(), "{tag}: table depends on H");
    ensure!(pairs(&g2) == pairs(&g), "{tag}: basis depends on H");

    if n <= BRUTE_FORCE_MAX_N {
        let partner = if rng.gen() {
            c.apply_permutation(&random_perm(rng, n)).unwrap()
        } else {
            random_code(rng, n, r).0
        };
        let brute = codecoset::perm::all_permutations(n).any(|s| equiv::verify_permutation(&c, &partner, &s).unwrap());
        let verdict = equiv::find_permutation(&c, &partner).map_err(|e| e.to_string())?;
        match verdict {
            EquivVerdict::Equivalent { witness } => {
                ensure!(brute && equiv::verify_permutation(&c, &partner, &witness).unwrap(), "{tag}: bad witness")
            }
            EquivVerdict::NotEquivalent { .. } => ensure!(!brute, "{tag}: missed an equivalence"),
            EquivVerdict::Undecided { reason } => return Err(format!("{tag}: undecided ({reason})")),
        }
    }
    Ok(())
}

fn criterion6() -> Check {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut compared = 0;
    for i in 0..RANDOM_CODES {
        random_properties(&mut rng, i)?;
        compared += 1;
    }
    ensure_eq!(compared, RANDOM_CODES, "codes checked");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("golden N/G fixtures", criterion1),
        ("golden matphi fixtures", criterion2),
        ("decoding", criterion3),
        ("reduction cycles", criterion4),
        ("equivalence", criterion5),
        ("property suites", criterion6),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS criterion {} ({name}) [{ms} ms]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{ms} ms]: {e}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
