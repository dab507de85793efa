//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p bettibound-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command as Process;

use bettibound::boij_soederberg::{
    convex_bounds_check, decompose, decompose_diagram, pure_diagram, RationalDiagram,
};
use bettibound::bounds::{
    binomial, binomial_identity_check, cwl_upper, evaluate_report, hypersurface_section_check,
    Assumptions, BoundFamily,
};
use bettibound::diagram::{
    hilbert_multiplicity, multiplicity_conjecture_check, peskine_szpiro_check, shifts,
};
use bettibound::ideal::monomials_of_degree;
use bettibound::resolution::{ek_betti, homology_betti, koszul_betti, mapping_cone_adjoin};
use bettibound::{ring_invariants, GradedBettiTable, Monomial, MonomialIdeal, Rational};
use bettibound_cli::parse::{parse_betti, parse_ideal};
use bettibound_cli::render::Format;
use bettibound_cli::{
    cmd_bounds, cmd_decompose, cmd_report, BoundsArgs, Config, DecomposeArgs, Input, Method,
    ReportArgs,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Verdict = Result<String, String>;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Every strongly stable ideal in `n ≤ max_n` variables generated in degrees
/// `≤ max_deg`, built one degree at a time from Borel-closed sets.
fn stable_universe(max_n: usize, max_deg: u32) -> Vec<MonomialIdeal> {
    fn borel_sets(n: usize, k: u32, base: &BTreeSet<Monomial>) -> Vec<BTreeSet<Monomial>> {
        let all = monomials_of_degree(n, k);
        let closed_step = |set: &BTreeSet<Monomial>, u: &Monomial| {
            (2..=n).all(|i| u.exchange(i, i - 1).is_none_or(|v| set.contains(&v)))
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![base.clone()];
        while let Some(set) = stack.pop() {
            if !seen.insert(set.clone()) {
                continue;
            }
            for u in &all {
                if !set.contains(u) && closed_step(&set, u) {
                    let mut next = set.clone();
                    next.insert(u.clone());
                    stack.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn grow(
        n: usize,
        k: u32,
        max_deg: u32,
        gens: &BTreeSet<Monomial>,
        part: &BTreeSet<Monomial>,
        out: &mut Vec<MonomialIdeal>,
    ) {
        if k > max_deg {
            if !gens.is_empty() {
                out.push(MonomialIdeal::minimalize(gens.iter().cloned(), n).unwrap());
            }
            return;
        }
        let base: BTreeSet<Monomial> = part
            .iter()
            .flat_map(|u| (1..=n).map(move |i| u.times_var(i)))
            .collect();
        for set in borel_sets(n, k, &base) {
            let mut g = gens.clone();
            g.extend(set.difference(&base).cloned());
            grow(n, k + 1, max_deg, &g, &set, out);
        }
    }

    let mut out = Vec::new();
    for n in 1..=max_n {
        grow(n, 1, max_deg, &BTreeSet::new(), &BTreeSet::new(), &mut out);
    }
    out
}

fn random_borel(rng: &mut StdRng) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=5);
        let seeds: Vec<Monomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let deg = rng.gen_range(1..=4u32);
                let mut e = vec![0u32; n];
                for _ in 0..deg {
                    e[rng.gen_range(0..n)] += 1;
                }
                Monomial::new(e)
            })
            .collect();
        let ideal = MonomialIdeal::borel_closure(seeds, n).unwrap();
        if ideal.generators().len() <= 24 {
            return ideal;
        }
    }
}

fn descending(p: usize, top: u32) -> Vec<Vec<u32>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=top {
        for mut rest in descending(p - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criterion_1() -> Verdict {
    let t = parse_betti(&fixture("quasi_pure.table")).map_err(|e| e.to_string())?;
    let r = evaluate_report(
        &t,
        &Assumptions {
            cohen_macaulay: true,
            codim: Some(3),
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let expect = [
        (BoundFamily::G1Upper, "20/6", false),
        (BoundFamily::G1Lower, "5", false),
        (BoundFamily::G2Upper, "20/3", true),
        (BoundFamily::G2Lower, "15/6", true),
    ];
    for (family, value, satisfied) in expect {
        let rec = r.record(1, family);
        check(
            rec.value.as_ref().ok() == Some(&q(value)) && rec.satisfied == satisfied,
            format!("{} at i=1: {:?}", family.name(), rec),
        )?;
    }
    check(
        r.class.is_strictly_quasi_pure && !r.class.is_pure,
        format!("classification {:?}", r.class),
    )?;
    Ok("20/6 and 5 violated, 20/3 and 15/6 hold, strictly quasi-pure, not pure".into())
}

fn criterion_2() -> Verdict {
    let ideal = parse_ideal(&fixture("strongly_stable.ideal")).map_err(|e| e.to_string())?;
    let t = ek_betti(&ideal).map_err(|e| e.to_string())?;
    check(
        t.totals() == [5, 7, 4, 1],
        format!("totals {:?}", t.totals()),
    )?;
    let s = shifts(&t);
    check(
        s.min == [2, 3, 5, 6] && s.big_m(4) == 6,
        format!("shifts {s:?}"),
    )?;
    let inv = ring_invariants(&ideal, &t).map_err(|e| e.to_string())?;
    check(
        inv.dim == 2 && inv.depth == 0 && !inv.is_cohen_macaulay,
        format!("invariants {inv:?}"),
    )?;
    let r = evaluate_report(
        &t,
        &Assumptions {
            codim: Some(2),
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let rec = r.record(4, BoundFamily::G2Lower);
    check(
        rec.value.as_ref().ok() == Some(&q("30/12")) && !rec.satisfied,
        format!("G2_lower at i=4: {rec:?}"),
    )?;
    Ok("totals 5,7,4,1; m=(2,3,5,6); M_4=6; dim 2, depth 0, not CM; G2_lower(4)=30/12 > 1".into())
}

fn criterion_3() -> Verdict {
    let universe = stable_universe(4, 3);
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let random: Vec<MonomialIdeal> = (0..50).map(|_| random_borel(&mut rng)).collect();
    let mut mismatches = Vec::new();
    for ideal in universe.iter().chain(&random) {
        let ek = ek_betti(ideal).map_err(|e| e.to_string())?;
        let hom = homology_betti(ideal).map_err(|e| e.to_string())?;
        if ek != hom {
            mismatches.push(ideal.to_string());
        }
    }
    check(
        mismatches.is_empty(),
        format!(
            "{} mismatches, first {:?}",
            mismatches.len(),
            mismatches.first()
        ),
    )?;
    Ok(format!(
        "{} enumerated + {} random ideals, 0 mismatches",
        universe.len(),
        random.len()
    ))
}

/// Returns the sequences where the stated characterization of full equality
/// fails, alongside the verdict.
fn criterion_4() -> (Verdict, Vec<Vec<u32>>) {
    let assume = Assumptions {
        complete_intersection: true,
        ..Default::default()
    };
    let mut count = 0;
    let mut off = Vec::new();
    let mut linear_off = 0;
    for p in 1..=6 {
        for degrees in descending(p, 6) {
            count += 1;
            let t = koszul_betti(&degrees).unwrap();
            let r = evaluate_report(&t, &assume).unwrap();
            for i in 1..=p {
                let c = Rational::from_integer(binomial(p as i64, i as i64));
                let v = |f| r.record(i, f).value.clone().unwrap();
                let chains = c <= v(BoundFamily::G1Upper)
                    && v(BoundFamily::G1Upper) <= v(BoundFamily::G3Upper)
                    && c >= v(BoundFamily::G1Lower)
                    && v(BoundFamily::G1Lower) >= v(BoundFamily::G2Lower);
                if !chains {
                    return (Err(format!("chain broken at {degrees:?}, i={i}")), off);
                }
            }
            let equal = degrees.iter().all(|d| *d == degrees[0]);
            let first = r.all_equal(BoundFamily::G1Upper) && r.all_equal(BoundFamily::G1Lower);
            if first != equal {
                return (
                    Err(format!("first-chain equality wrong at {degrees:?}")),
                    off,
                );
            }
            let full = first && r.all_equal(BoundFamily::G3Upper);
            if full != degrees.iter().all(|d| *d == 1) {
                off.push(degrees.clone());
            }
            let linear = bettibound::resolution::has_linear_resolution(&t, degrees[p - 1]);
            if full != linear {
                linear_off += 1;
            }
        }
    }
    let verdict = if off.is_empty() {
        Ok(format!(
            "{count} sequences, chains and equality cases as stated"
        ))
    } else {
        Err(format!(
            "{count} sequences; chains hold; full equality also at {} sequences {:?} (p = 1), \
             where a single form has a linear resolution; equality <=> linear resolution \
             mismatches: {linear_off}",
            off.len(),
            off
        ))
    };
    (verdict, off)
}

fn criterion_5() -> Verdict {
    let t = parse_betti(&fixture("quasi_pure.table")).map_err(|e| e.to_string())?;
    let e = hilbert_multiplicity(&t, 3)
        .map_err(|e| e.to_string())?
        .multiplicity;
    let w = multiplicity_conjecture_check(&t, 3).map_err(|e| e.to_string())?;
    check(e == int(6), format!("e = {e}"))?;
    check(
        w.lower == int(5) && w.upper == q("40/6") && w.lower_holds && w.upper_holds,
        format!("window {w:?}"),
    )?;
    for p in 1..=4usize {
        for a in 1..=3u32 {
            let t = koszul_betti(&vec![a; p]).unwrap();
            let w = multiplicity_conjecture_check(&t, p).map_err(|e| e.to_string())?;
            check(
                w.multiplicity == int((a as u64).pow(p as u32))
                    && w.lower_equality
                    && w.upper_equality,
                format!("a={a} p={p}: {w:?}"),
            )?;
        }
    }
    Ok("e=6 in [5, 40/6]; e=a^p with both window ends attained for p<=4, a<=3".into())
}

fn criterion_6() -> Verdict {
    let t = parse_betti(&fixture("quasi_pure.table")).map_err(|e| e.to_string())?;
    check(peskine_szpiro_check(&t).all_zero(), "fixture residuals")?;
    let mut count = 0;
    for p in 1..=6 {
        for degrees in descending(p, 6) {
            let r = peskine_szpiro_check(&koszul_betti(&degrees).unwrap());
            check(r.all_zero(), format!("{degrees:?}: {:?}", r.residuals))?;
            count += 1;
        }
    }
    Ok(format!(
        "fixture and {count} Koszul tables, all residuals 0"
    ))
}

fn criterion_7() -> Verdict {
    let t = parse_betti(&fixture("quasi_pure.table")).map_err(|e| e.to_string())?;
    let out = decompose(&t).map_err(|e| e.to_string())?;
    let dec = out.success().ok_or("fixture failed to decompose")?;
    let terms: Vec<(Rational, Vec<u32>)> = dec
        .terms
        .iter()
        .map(|t| (t.lambda.clone(), t.diagram.shifts().to_vec()))
        .collect();
    check(
        terms == [(q("2/5"), vec![2, 3, 5]), (q("3/5"), vec![2, 4, 5])],
        format!("terms {terms:?}"),
    )?;
    check(
        dec.reconstruct() == RationalDiagram::from_table(&t),
        "reconstruction",
    )?;
    check(dec.lambda_sum() == int(1), "lambda sum")?;
    check(convex_bounds_check(dec).all_hold(), "convex bounds")?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for sample in 0..100 {
        let p = rng.gen_range(1..=4usize);
        let mut d: Vec<u32> = loop {
            let mut v: Vec<u32> = (0..p).map(|_| rng.gen_range(1..=10)).collect();
            v.sort_unstable();
            v.dedup();
            if v.len() == p {
                break v;
            }
        };
        let mut strands = vec![d.clone()];
        for _ in 0..rng.gen_range(0..=5) {
            let k = rng.gen_range(0..p);
            let mut next = d.clone();
            next[k] += 1;
            if next[k] <= 10 && (k + 1 == p || next[k] < next[k + 1]) {
                d = next;
                strands.push(d.clone());
            }
        }
        let weights: Vec<u32> = strands.iter().map(|_| rng.gen_range(1..=9)).collect();
        let total: u32 = weights.iter().sum();
        let lambdas: Vec<Rational> = weights
            .iter()
            .map(|w| Rational::new((*w).into(), total.into()))
            .collect();
        let pis: Vec<_> = strands.iter().map(|s| pure_diagram(s).unwrap()).collect();
        let target = RationalDiagram::combination(lambdas.iter().zip(&pis));
        let out = decompose_diagram(&target).map_err(|e| e.to_string())?;
        let dec = out
            .success()
            .ok_or_else(|| format!("sample {sample} {strands:?} failed"))?;
        check(
            dec.reconstruct() == target && dec.lambda_sum() == int(1) && dec.is_chain(),
            format!("sample {sample} {strands:?}"),
        )?;
    }
    Ok("{(2/5,(2,3,5)), (3/5,(2,4,5))}, exact; 100 random combinations reconstructed".into())
}

fn criterion_8() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut equal_cases = 0;
    for sample in 0..100 {
        let linear = rng.gen_bool(0.25);
        let mut t = if rng.gen_bool(0.5) {
            GradedBettiTable::trivial(1)
        } else {
            let k = rng.gen_range(1..=3);
            let a = if linear { 1 } else { rng.gen_range(1..=2) };
            ek_betti(&MonomialIdeal::power_of_maximal_ideal(k, a).unwrap()).unwrap()
        };
        let cones = if t.projdim() == 0 {
            rng.gen_range(1..=4)
        } else {
            rng.gen_range(0..=3)
        };
        for _ in 0..cones {
            let d = if linear { 1 } else { rng.gen_range(1..=4) };
            t = mapping_cone_adjoin(&t, d).unwrap();
        }
        let d = if linear && rng.gen_bool(0.8) {
            1
        } else {
            rng.gen_range(1..=4)
        };
        let c = hypersurface_section_check(&t, d).map_err(|e| format!("sample {sample}: {e}"))?;
        check(!c.degenerate, "input with p = 0")?;
        check(
            c.all_satisfied,
            format!("sample {sample}: bound fails on {:?}", c.cone),
        )?;
        check(
            c.all_equal == c.predicted_equality,
            format!(
                "sample {sample}: equality {} but predicted {} for d={d}, {:?}",
                c.all_equal, c.predicted_equality, t
            ),
        )?;
        if c.all_equal {
            equal_cases += 1;
        }
    }
    check(equal_cases > 0, "sample has no equality case")?;
    Ok(format!(
        "100 cones satisfy the bound; equality at all i in {equal_cases}, each a d=1 linear case"
    ))
}

fn is_power_ideal(ideal: &MonomialIdeal) -> bool {
    let Some(a) = ideal.min_degree() else {
        return false;
    };
    let k = ideal
        .generators()
        .iter()
        .map(|g| g.max_index().unwrap())
        .max()
        .unwrap();
    let expected: Vec<Vec<u32>> = monomials_of_degree(k, a)
        .into_iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.resize(ideal.n(), 0);
            e
        })
        .collect();
    let mut got: Vec<Vec<u32>> = ideal
        .generators()
        .iter()
        .map(|g| g.exponents().to_vec())
        .collect();
    let mut expected = expected;
    got.sort();
    expected.sort();
    got == expected
}

fn criterion_9() -> Verdict {
    let mut cm = 0;
    let mut powers = 0;
    for ideal in stable_universe(4, 3) {
        let t = ek_betti(&ideal).unwrap();
        let inv = ring_invariants(&ideal, &t).unwrap();
        if !inv.is_cohen_macaulay {
            continue;
        }
        cm += 1;
        let m1 = shifts(&t).big_m(1);
        let mut all_equal = true;
        for (k, beta) in t.totals().into_iter().enumerate() {
            let bound = Rational::from_integer(cwl_upper(k + 1, m1, inv.codim));
            check(
                int(beta) <= bound,
                format!("{ideal}: beta_{} = {beta} > {bound}", k + 1),
            )?;
            all_equal &= bound == int(beta);
        }
        let power = is_power_ideal(&ideal);
        powers += power as usize;
        check(
            all_equal == power,
            format!("{ideal}: equality {all_equal}, power ideal {power}"),
        )?;
    }
    for n in 1..=8 {
        for i in 1..=n {
            for m1 in 1..=6 {
                check(
                    binomial_identity_check(i, n, m1),
                    format!("identity i={i} n={n} M1={m1}"),
                )?;
            }
        }
    }
    Ok(format!(
        "{cm} CM ideals bounded, equality exactly at the {powers} power ideals; identity holds"
    ))
}

fn input(ideal: Option<&str>, table: Option<&str>, ci: Option<Vec<u32>>) -> Input {
    Input {
        ideal: ideal.map(fixture_path),
        table: table.map(fixture_path),
        ci,
    }
}

fn criterion_10() -> Verdict {
    let config = Config::default();
    let mut runs = 0;
    let ideals = ["strongly_stable.ideal", "power_n3_a2.ideal", "ci_235.ideal"];
    let tables = ["quasi_pure.table", "pure_k222.table", "corrupted.table"];
    let twice = |f: &dyn Fn() -> Option<(String, u8)>| -> Result<(), String> {
        let (a, b) = (f(), f());
        check(a.is_some() && a == b, "outputs differ")
    };
    for format in [Format::Tsv, Format::JsonLines] {
        let mut report_inputs: Vec<Input> =
            ideals.iter().map(|f| input(Some(f), None, None)).collect();
        report_inputs.push(input(None, None, Some(vec![1, 1, 1])));
        for inp in report_inputs {
            let args = ReportArgs {
                input: inp,
                method: Method::Auto,
                strict: false,
                format,
            };
            twice(&|| cmd_report(&args, &config).ok().map(|o| (o.stdout, o.code)))?;
            runs += 2;
        }
        for f in tables {
            let b = BoundsArgs {
                input: input(None, Some(f), None),
                format,
                ..Default::default()
            };
            twice(&|| cmd_bounds(&b, &config).ok().map(|o| (o.stdout, o.code)))?;
            let d = DecomposeArgs {
                input: input(None, Some(f), None),
                method: Method::Auto,
                format,
            };
            twice(&|| cmd_decompose(&d, &config).ok().map(|o| (o.stdout, o.code)))?;
            runs += 4;
        }
    }
    for f in ideals {
        let path = fixture_path(f);
        let spawn = || {
            Process::new(env!("CARGO_BIN_EXE_bettibound"))
                .args(["report", "--ideal", path.to_str().unwrap()])
                .env_remove("BETTIBOUND_MAX_GENS")
                .output()
                .unwrap()
                .stdout
        };
        let (a, b) = (spawn(), spawn());
        let args = ReportArgs {
            input: input(Some(f), None, None),
            method: Method::Auto,
            strict: false,
            format: Format::Tsv,
        };
        let inproc = cmd_report(&args, &config).unwrap().stdout;
        check(
            a == b && a == inproc.as_bytes(),
            format!("{f}: process output differs"),
        )?;
        runs += 2;
    }
    Ok(format!(
        "{runs} runs byte-identical in pairs, binary matches in-process"
    ))
}

#[test]
fn acceptance() {
    let (v4, off4) = criterion_4();
    let results: Vec<(u32, Verdict)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, v4),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
    ];
    for (k, v) in &results {
        match v {
            Ok(msg) => println!("PASS criterion {k}: {msg}"),
            Err(msg) => println!("FAIL criterion {k}: {msg}"),
        }
    }
    let unexpected: Vec<u32> = results
        .iter()
        .filter(|(k, v)| v.is_err() && *k != 4)
        .map(|(k, _)| *k)
        .collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    // Criterion 4 fails only at single forms of degree above 1.
    let known: Vec<Vec<u32>> = (2..=6).map(|d| vec![d]).collect();
    assert!(
        results[3].1.is_ok() || off4 == known,
        "criterion 4: {off4:?}"
    );
}

/// Sizes agree with a brute-force count of subsets of monomials of degree
/// at most 3 closed under multiplication and Borel moves.
#[test]
fn universe_sizes() {
    let sizes: Vec<usize> = (0..=3).map(|n| stable_universe(n, 3).len()).collect();
    let per_n: Vec<usize> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
    assert_eq!(per_n, vec![3, 14, 64]);
}
