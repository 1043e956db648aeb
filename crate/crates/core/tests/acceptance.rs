//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the binary
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;

use oka_groups::abelian::{abelian_invariants, AbelianInvariants};
use oka_groups::cli;
use oka_groups::fibertype::{
    add_generic_fiber, oka_join_example, pi1_generic_fibers, pi1_with_special_fiber, PencilSpec,
    SpecialFiber,
};
use oka_groups::finquot::{
    count_homomorphisms, hom_spectrum, hom_spectrum_with, make_cyclic, make_symmetric, FiniteGroup,
    SearchLimits,
};
use oka_groups::oka::{canonical_form, is_isomorphic, oka_presentation, simplified_presentation, OkaParams, SimplifiedParams};
use oka_groups::words::parse_presentation;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn g(p: u64, q: u64, r: u64) -> OkaParams {
    OkaParams::new(p, q, r).unwrap()
}

/// `{Z2, Z3, Z4, Z6, S3, S4}`
fn standard_targets() -> Vec<FiniteGroup> {
    vec![
        make_cyclic(2).unwrap(),
        make_cyclic(3).unwrap(),
        make_cyclic(4).unwrap(),
        make_cyclic(6).unwrap(),
        make_symmetric(3).unwrap(),
        make_symmetric(4).unwrap(),
    ]
}

/// Closed form `Z_{r·p/s} x Z^{s-1}`, computed directly.
fn closed_form_abelianization(p: u64, q: u64, r: u64) -> (usize, Vec<BigUint>) {
    let s = p.gcd(&q);
    let t = r * p / s;
    let torsion = if t > 1 { vec![BigUint::from(t)] } else { vec![] };
    ((s - 1) as usize, torsion)
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for p in 1..=8 {
        for q in 1..=8 {
            for r in 1..=8 {
                let inv = abelian_invariants(&oka_presentation(g(p, q, r)));
                let (free_rank, torsion) = closed_form_abelianization(p, q, r);
                if inv.free_rank != free_rank || inv.torsion != torsion {
                    return fail(format!("G({p};{q};{r}): SNF gives {inv}"));
                }
                checked += 1;
            }
        }
    }
    pass(format!("{checked} cases"))
}

fn criterion_2() -> Outcome {
    let targets = standard_targets();
    let mut checked = 0;
    for p in 1..=5 {
        for q in 1..=5u64 {
            if q + 1 > 6 {
                continue;
            }
            for r in 1..=5 {
                let s = p.gcd(&q);
                let a = (q / s).gcd(&r);
                let h = SimplifiedParams::new(s - 1, p / s, a, r / a).unwrap();
                let lhs = hom_spectrum(&oka_presentation(g(p, q, r)), &targets).unwrap();
                let rhs = hom_spectrum(&simplified_presentation(h), &targets).unwrap();
                if lhs != rhs {
                    return fail(format!("G({p};{q};{r}): {lhs} vs H: {rhs}"));
                }
                checked += 1;
            }
        }
    }
    pass(format!("{checked} cases"))
}

fn criterion_3() -> Outcome {
    let targets = standard_targets();
    let mut all = Vec::new();
    for p in 1..=5 {
        for q in 1..=5 {
            for r in 1..=5 {
                let gr = g(p, q, r);
                let canon = canonical_form(gr).params;
                let lhs = hom_spectrum(&oka_presentation(gr), &targets).unwrap();
                let rhs = hom_spectrum(&oka_presentation(canon), &targets).unwrap();
                if lhs != rhs {
                    return fail(format!("{gr} vs canonical {canon}: {lhs} vs {rhs}"));
                }
                let closed = closed_form_abelianization(p, q, r);
                let snf = abelian_invariants(&oka_presentation(gr));
                all.push((gr, closed, snf));
            }
        }
    }
    let mut non_iso_pairs = 0;
    let mut separated = 0;
    for (i, (g1, c1, a1)) in all.iter().enumerate() {
        for (g2, c2, a2) in &all[i + 1..] {
            if is_isomorphic(*g1, *g2) {
                continue;
            }
            non_iso_pairs += 1;
            if c1 != c2 {
                separated += 1;
                if a1 == a2 {
                    return fail(format!("{g1} and {g2}: distinct closed forms, equal SNF {a1}"));
                }
            }
        }
    }
    pass(format!(
        "125 spectra agree with canonical forms; {separated} of {non_iso_pairs} non-isomorphic pairs separated by abelianization"
    ))
}

/// Number of elements `x` with `x^k = 1`, by direct enumeration.
fn roots_of_unity(t: &FiniteGroup, k: i64) -> u64 {
    t.elements().filter(|&x| t.pow(x, k) == t.identity()).count() as u64
}

fn criterion_4() -> Outcome {
    let pres = oka_presentation(g(2, 3, 3));
    for (n, expected) in [(3, 12u64), (4, 90u64)] {
        let t = make_symmetric(n).unwrap();
        let oracle = roots_of_unity(&t, 2) * roots_of_unity(&t, 3);
        if oracle != expected {
            return fail(format!("oracle for S{n} gives {oracle}, expected {expected}"));
        }
        let got = count_homomorphisms(&pres, &t).unwrap();
        if got != expected {
            return fail(format!("count into S{n} = {got}, expected {expected}"));
        }
    }
    pass("S3: 12 = 4·3, S4: 90 = 10·9")
}

fn criterion_5() -> Outcome {
    let targets: Vec<FiniteGroup> = standard_targets().into_iter().take(5).collect();
    for m in 1..=4u64 {
        for k in 1..=4u64 {
            let cyclic = parse_presentation(&format!("< a | a^{} >", m * k)).unwrap();
            let lhs = hom_spectrum(&oka_presentation(g(m, 1, k)), &targets).unwrap();
            let rhs = hom_spectrum(&cyclic, &targets).unwrap();
            if lhs != rhs {
                return fail(format!("G({m};1;{k}): {lhs} vs Z_{}: {rhs}", m * k));
            }
        }
    }
    pass("16 cases")
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for p in 1..=5u64 {
        for q in 1..=p {
            if p.gcd(&q) != 1 {
                continue;
            }
            for k in 1..=5 {
                for s in 1..=5 {
                    let generic = pi1_generic_fibers(PencilSpec::new(p, q, k, s, SpecialFiber::None)).unwrap();
                    let want = AbelianInvariants::from_cyclic_factors((s - 1) as usize, &[k * p * q]);
                    let got = abelian_invariants(&generic.presentation);
                    if got != want {
                        return fail(format!("generic p={p} q={q} k={k} s={s}: {got} vs {want}"));
                    }
                    for (special, degree) in [(SpecialFiber::Fkp, k * p), (SpecialFiber::Fkq, k * q)] {
                        let ans = pi1_with_special_fiber(PencilSpec::new(p, q, k, s, special)).unwrap();
                        let want = AbelianInvariants::from_cyclic_factors(s as usize, &[degree]);
                        let got = abelian_invariants(&ans.presentation);
                        if got != want {
                            return fail(format!("{special:?} p={p} q={q} k={k} s={s}: {got} vs {want}"));
                        }
                    }
                    checked += 1;
                }
            }
        }
    }
    pass(format!("{checked} pencils, 3 curves each"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for p in 1..=5u64 {
        for q in 1..=p {
            if p.gcd(&q) != 1 {
                continue;
            }
            for k in 1..=5 {
                for s in 1..=5 {
                    let spec = PencilSpec::new(p, q, k, s, SpecialFiber::None);
                    let now = pi1_generic_fibers(spec).unwrap().oka.unwrap();
                    let next = pi1_generic_fibers(spec.with_fibers(s + 1)).unwrap().oka.unwrap();
                    if add_generic_fiber(now).unwrap() != next {
                        return fail(format!("{now} + fiber != {next}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    pass(format!("{checked} cases"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut swapped = 0;
    for r in 0..=4u64 {
        for m1 in 1..=4u64 {
            for m2 in 1..=4u64 {
                if m1.gcd(&m2) != 1 {
                    continue;
                }
                for d in 1..=32u64 {
                    if d % (m1 * m2) != 0 {
                        continue;
                    }
                    let joined = oka_join_example(r, m1, m2, d).unwrap();
                    let k = d / (m1 * m2);
                    // The pencil needs p >= q; otherwise use the swapped orientation.
                    let (p, q) = if m2 >= m1 { (m2, m1) } else { (m1, m2) };
                    swapped += (m2 < m1) as usize;
                    let pencil = pi1_generic_fibers(PencilSpec::new(p, q, k, r + 1, SpecialFiber::None))
                        .unwrap()
                        .oka
                        .unwrap();
                    if !is_isomorphic(joined, pencil) {
                        return fail(format!("{joined} not isomorphic to {pencil}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    let targets = vec![make_symmetric(3).unwrap(), make_symmetric(4).unwrap()];
    let limits = SearchLimits {
        max_generators: 7,
        ..SearchLimits::default()
    };
    let a = hom_spectrum_with(&oka_presentation(g(4, 6, 3)), &targets, limits).unwrap();
    let b = hom_spectrum_with(&oka_presentation(g(6, 4, 2)), &targets, limits).unwrap();
    if a != b {
        return fail(format!("G(4;6;3) {a} vs G(6;4;2) {b}"));
    }
    pass(format!(
        "{checked} tuples ({swapped} with m1 > m2 via p=m1, q=m2); G(4;6;3), G(6;4;2) spectra {a}"
    ))
}

const PRESENT_2_3_3: &str = "\
# G(2;3;3) oka presentation
presentation=< a0, a1, a2, w | a0^-1*a1^-1*w, w^3, a0^-1*w^-1*a2*w, a0*w*a1^-1*w^-1, a1*w*a2^-1*w^-1 >
generators=4
relators=5
";

const CANON_2_4_6: &str = "\
# canonical representative of G(2;4;6)
canonical=G(4;2;3)
invariants=s:2,center:3,factors:{1,2}
cyclic=false
";

const ISO_4_6_3_6_4_2: &str = "\
# G(4;6;3): invariants s:2,center:1,factors:{2,3}
# G(6;4;2): invariants s:2,center:1,factors:{2,3}
isomorphic=true
";

fn criterion_9() -> Outcome {
    let golden = [
        (vec!["present", "2", "3", "3"], PRESENT_2_3_3),
        (vec!["canon", "2", "4", "6"], CANON_2_4_6),
        (vec!["iso", "4", "6", "3", "6", "4", "2"], ISO_4_6_3_6_4_2),
    ];
    for (args, expected) in &golden {
        let out = cli::run(args.iter().copied());
        if out.code != 0 || out.stdout != *expected {
            return fail(format!("{args:?} gave code {} output {:?}", out.code, out.stdout));
        }
    }
    let dir = std::env::temp_dir().join(format!("oka-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let big = dir.join("big.txt");
    std::fs::write(&big, "< a, b, c, d, e, f, g | a^2 >").unwrap();
    let codes = [
        (cli::run(["iso", "2", "1", "1", "1", "1", "3"]).code, 0),
        (cli::run(["pencil", "--p", "2", "--q", "3", "--k", "1", "--fibers", "1"]).code, 1),
        (cli::run(["canon", "2", "x", "6"]).code, 2),
        (cli::run(["frobnicate"]).code, 2),
        (
            cli::run(["homcount", "--file", big.to_str().unwrap(), "--target", "sym:3"]).code,
            3,
        ),
    ];
    std::fs::remove_dir_all(&dir).ok();
    for (i, (got, want)) in codes.iter().enumerate() {
        if got != want {
            return fail(format!("exit code case {i}: got {got}, want {want}"));
        }
    }
    pass("3 golden outputs; exit codes 0/1/2/3")
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 abelianization oracle vs closed form", Duration::from_secs(10), criterion_1),
        ("2 characterization by hom spectra", Duration::from_secs(120), criterion_2),
        ("3 isomorphism soundness", Duration::from_secs(300), criterion_3),
        ("4 free-product fixture G(2;3;3)", Duration::from_secs(1), criterion_4),
        ("5 cyclic degeneration G(m;1;k)", Duration::from_secs(30), criterion_5),
        ("6 main theorem H1 consistency", Duration::from_secs(30), criterion_6),
        ("7 addition coherence", Duration::from_secs(1), criterion_7),
        ("8 join example round trip", Duration::from_secs(120), criterion_8),
        ("9 CLI golden output and exit codes", Duration::from_secs(1), criterion_9),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let ok = outcome.passed && in_time;
        failures += (!ok) as usize;
        println!(
            "criterion {name}: {} ({}; {:.2?} of {:?}{})",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed,
            budget,
            if in_time { "" } else { ", over time budget" }
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
