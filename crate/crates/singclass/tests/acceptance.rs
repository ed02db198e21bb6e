//! End-to-end acceptance checks. Runs without the libtest harness so the
//! per-criterion lines are always printed; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value as Json;
use singclass::core::brieskorn::{classify_cone_surface, classify_triple, quasirational_conditions};
use singclass::core::exactmath::{series_coeffs, Field, Poly, Scalar, SeriesSpec, Vars};
use singclass::core::lnd::{build_suspension, default_cap, exp_flow, orbit_avoids, NilpotencyStatus};
use singclass::core::quotients::{descend_lnd, hj_expansion, hj_value, invariant_generators, CyclicQuotient};
use singclass::sweep::{sorted_triples, triple_sweep};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sc_json(args: &[&str]) -> (i32, Json) {
    let r = singclass::run(std::iter::once("singclass").chain(args.iter().copied()).chain(["--json"]));
    let doc = serde_json::from_str(&r.stdout).unwrap_or(Json::Null);
    (r.exit_code, doc)
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn schwartz_identities() -> Check {
    let start = Instant::now();
    let (_, doc) = sc_json(&["schwartz", "all"]);
    let elapsed = start.elapsed();
    let results = doc["results"].as_array().ok_or("no JSON results")?;
    let by_name: BTreeMap<&str, &Json> = results
        .iter()
        .filter_map(|r| Some((r["identity"].as_str()?, r)))
        .collect();
    for d in 2..=50 {
        let name = format!("dihedral:{d}");
        ensure(by_name.get(name.as_str()).is_some_and(|r| r["holds"] == true), || format!("{name} does not hold"))?;
    }
    let tet = by_name.get("tetrahedral").ok_or("tetrahedral missing")?;
    ensure(tet["holds"] == true && tet["field"] == "Q(sqrt(3))", || "tetrahedral over Q(sqrt(3)) fails".into())?;
    ensure(by_name["icosahedral"]["holds"] == true, || "icosahedral fails".into())?;
    let mut octa = Vec::new();
    for name in ["octahedral", "octahedral-variant"] {
        let r = by_name.get(name).ok_or_else(|| format!("{name} missing"))?;
        let holds = r["holds"].as_bool().ok_or_else(|| format!("{name} has no status"))?;
        octa.push(format!("{name} {}", if holds { "holds" } else { "fails" }));
    }
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("53 identities exact; {}; {elapsed:.2?}", octa.join(", ")))
}

/// `N = pqr − qr − pr − pq` and `1/p + 1/q + 1/r > 1`, computed here
/// independently of the library.
fn normal_degree(p: u64, q: u64, r: u64) -> i64 {
    (p * q * r) as i64 - (q * r + p * r + p * q) as i64
}

fn reciprocal_sum_exceeds_one(p: u64, q: u64, r: u64) -> bool {
    let l = p.lcm(&q).lcm(&r);
    l / p + l / q + l / r > l
}

fn platonic_sweep() -> Check {
    let start = Instant::now();
    let sweep = triple_sweep(40, 20).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(sweep.platonic_disagreements.is_empty(), || {
        format!("library disagreements {:?}", sweep.platonic_disagreements)
    })?;
    // recheck the verdicts against the independent formulas
    for [p, q, r] in sorted_triples(40) {
        let (p, q, r) = (p as u64, q as u64, r as u64);
        let recip = reciprocal_sum_exceeds_one(p, q, r);
        ensure(recip == (normal_degree(p, q, r) < 0), || format!("({p},{q},{r}) sign mismatch"))?;
    }
    let expected_platonic = sorted_triples(40)
        .iter()
        .filter(|t| reciprocal_sum_exceeds_one(t[0] as u64, t[1] as u64, t[2] as u64))
        .count();
    ensure(sweep.platonic == expected_platonic, || "platonic count differs".into())?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{} triples, {} Platonic, 0 disagreements; {elapsed:.2?}", sweep.triples, sweep.platonic))
}

/// `dim A_ν` for `x^p + y^q + z^r` by direct enumeration of monomials
/// `x^a y^b z^c` of weighted degree `ν` that are not multiples of `x^p`.
fn dim_by_enumeration(p: u64, q: u64, r: u64, nu: i64) -> u64 {
    let w = [q * r, p * r, p * q];
    let mut n = 0;
    if nu < 0 {
        return 0;
    }
    // A has basis x^a y^b z^c with a < p
    for a in 0..p.min(nu as u64 / w[0] + 1) {
        let rest = nu - (a * w[0]) as i64;
        for b in 0..=rest / w[1] as i64 {
            if (rest - b * w[1] as i64) % w[2] as i64 == 0 {
                n += 1;
            }
        }
    }
    n
}

fn quasirational_sweep() -> Check {
    let mut disagreements = Vec::new();
    let mut quasi = 0;
    for [p, q, r] in sorted_triples(40) {
        let cond = quasirational_conditions(p, q, r).map_err(|e| e.to_string())?;
        let (p, q, r) = (p as u64, q as u64, r as u64);
        let n = normal_degree(p, q, r);
        let vanishes = n < 0 || dim_by_enumeration(p, q, r, n) == 0;
        quasi += usize::from(cond);
        if cond != vanishes {
            disagreements.push((p, q, r));
        }
    }
    let sweep = triple_sweep(40, 1).map_err(|e| e.to_string())?;
    ensure(disagreements.is_empty(), || format!("disagreements {disagreements:?}"))?;
    ensure(sweep.quasirational_disagreements.is_empty(), || "library cross-check disagrees".into())?;
    Ok(format!("{quasi} quasirational triples, 0 disagreements"))
}

fn hilbert_coefficients() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for case in 0..100 {
        let n = rng.gen_range(2..=4);
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=25)).collect();
        let d = w[rng.gen_range(0..n)] * rng.gen_range(1..=6);
        let spec = SeriesSpec::new(vec![d], w.clone(), 201).map_err(|e| e.to_string())?;
        let got = series_coeffs(&spec).map_err(|e| format!("case {case}: {e}"))?;
        // bucket every lattice point of weighted degree <= 200
        let mut counts = vec![0u64; 201];
        let mut stack = vec![(0usize, 0u64)];
        while let Some((j, sum)) = stack.pop() {
            if j == w.len() {
                counts[sum as usize] += 1;
                continue;
            }
            let mut s = sum;
            while s <= 200 {
                stack.push((j + 1, s));
                s += w[j];
            }
        }
        for nu in 0..=200usize {
            let expected = counts[nu] - if nu as u64 >= d { counts[nu - d as usize] } else { 0 };
            ensure(got[nu] == expected.into(), || format!("weights {w:?} degree {d}: coefficient {nu}"))?;
        }
    }
    Ok("100 random hypersurfaces, all coefficients to 200 exact".into())
}

fn profile_237() -> Check {
    let c = classify_triple(2, 3, 7, 12).map_err(|e| e.to_string())?;
    // independent values: A_0 = C, A_1 = 0, A_6 spanned by z
    let delta1 = dim_by_enumeration(2, 3, 7, 0) + dim_by_enumeration(2, 3, 7, 1);
    let pbar6 = dim_by_enumeration(2, 3, 7, 6);
    ensure(c.normal_degree == 1, || format!("N = {}", c.normal_degree))?;
    ensure(c.delta_table[0] == 1 && delta1 == 1, || "delta_1 != 1".into())?;
    ensure(c.pbar_table[5] == 1 && pbar6 == 1, || "pbar_6 != 1".into())?;
    ensure(c.log_kodaira.to_string() == "1", || format!("log kodaira {}", c.log_kodaira))?;
    ensure(c.quasirational && !c.is_rational, || "quasirational/rational flags wrong".into())?;
    let (_, doc) = sc_json(&["triple", "2", "3", "7"]);
    let r = &doc["results"][0];
    ensure(r["N"] == "1" && r["rational"] == false && r["quasirational"] == true, || "CLI report differs".into())?;
    Ok("N = 1, delta_1 = 1, pbar_6 = 1, k = 1, quasirational, not rational".into())
}

fn veronese_237() -> Check {
    let (code, doc) = sc_json(&["veronese", "2", "3", "7", "--d", "2"]);
    let r = &doc["results"][0];
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(r["rational"] == true, || "not rational".into())?;
    ensure(r["quotient"] == false, || "reported as quotient".into())?;
    ensure(r["log-kodaira"] == "1", || format!("log kodaira {}", r["log-kodaira"]))?;
    Ok("rational = yes, quotient = no, k = 1".into())
}

fn cyclic_quotients() -> Check {
    let mut pairs = 0;
    for d in 2..=200u64 {
        let a = CyclicQuotient::new(d, d - 1).map_err(|e| e.to_string())?;
        ensure(hj_expansion(&a) == vec![2; d as usize - 1], || format!("A_{} chain", d - 1))?;
        for e in (1..d).filter(|e| e.gcd(&d) == 1) {
            let q = CyclicQuotient::new(d, e).map_err(|e| e.to_string())?;
            let value = hj_value(&hj_expansion(&q)).map_err(|e| e.to_string())?;
            ensure(value == (d as u128, e as u128), || format!("{d}/{e} reconstructs to {value:?}"))?;
            if d <= 60 {
                let dual = CyclicQuotient::new(d, d - e).map_err(|e| e.to_string())?;
                let gens = invariant_generators(&q).len();
                ensure(gens == hj_expansion(&dual).len() + 2, || format!("duality fails at ({d},{e})"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs reconstructed, A-chains and duality exact"))
}

fn cone_sweep() -> Check {
    for d in 2..=30 {
        for m in 2..=30 {
            let c = classify_cone_surface(d, m, None).map_err(|e| e.to_string())?;
            let n = (d as i64 - 2) * m as i64 - d as i64;
            ensure(c.normal_degree == n, || format!("N wrong at ({d},{m})"))?;
            ensure((n < 0) == (d <= 2 || (d, m) == (3, 2)), || format!("sign rule fails at ({d},{m})"))?;
            ensure(c.solutions_exist == (n < 0), || format!("decision differs at ({d},{m})"))?;
        }
    }
    Ok("841 pairs, exact".into())
}

fn random_p(rng: &mut ChaCha8Rng) -> Poly {
    let n = rng.gen_range(1..=4);
    let ring: Vars = (1..=n).map(|i| format!("x{i}")).collect();
    loop {
        let terms: Vec<(Vec<u32>, Scalar)> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let mut budget = rng.gen_range(0..=6u32);
                let exps = (0..n)
                    .map(|_| {
                        let e = rng.gen_range(0..=budget);
                        budget -= e;
                        e
                    })
                    .collect();
                (exps, Scalar::from_int(Field::Rational, rng.gen_range(-9..=9)))
            })
            .collect();
        let p = Poly::from_terms(Field::Rational, ring.clone(), terms).expect("valid terms");
        if !p.is_constant() {
            return p;
        }
    }
}

fn lnd_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut group_checked = 0;
    for i in 0..50 {
        let p = random_p(&mut rng);
        let s = build_suspension(&p).map_err(|e| e.to_string())?;
        let image = s.derivation.apply(&s.relation).map_err(|e| e.to_string())?;
        ensure(image.is_zero(), || format!("p = {p}: relation not annihilated"))?;
        let flow = exp_flow(&s.derivation, default_cap(&s.derivation)).map_err(|e| format!("p = {p}: {e}"))?;
        let law = flow.satisfies_group_law().map_err(|e| e.to_string())?;
        ensure(law, || format!("case {i}: group law fails for p = {p}"))?;
        group_checked += 1;
    }

    let x1sq = Poly::univariate(Field::Rational, "x1", &[0, 0, 1]);
    let s = build_suspension(&x1sq).map_err(|e| e.to_string())?;
    let flow = exp_flow(&s.derivation, default_cap(&s.derivation)).map_err(|e| e.to_string())?;
    let one = Scalar::one(Field::Rational);
    let zero = Scalar::zero(Field::Rational);
    let orbit = orbit_avoids(
        &flow,
        std::slice::from_ref(&s.relation),
        &[zero.clone(), zero.clone(), zero.clone()],
        &[one.clone(), one.clone(), one],
    )
    .map_err(|e| e.to_string())?;
    ensure(orbit.on_variety && orbit.avoids, || "orbit through (1,1,1) meets the origin".into())?;

    let q = CyclicQuotient::new(3, 2).map_err(|e| e.to_string())?;
    let desc = descend_lnd(&q).map_err(|e| e.to_string())?;
    let pres = desc.presentation().ok_or("no presentation for (3,2)")?;
    let shown = pres.derivation.to_string();
    ensure(shown == "u -> 0\nw -> u\nv -> 3*w^2\n", || format!("descended derivation {shown:?}"))?;
    let rel = &pres.relations[0];
    ensure(pres.derivation.apply(rel).map_err(|e| e.to_string())?.is_zero(), || "relation not killed".into())?;
    let cap = default_cap(&pres.derivation);
    let verdict = singclass::core::lnd::is_locally_nilpotent(&pres.derivation, cap).map_err(|e| e.to_string())?;
    ensure(verdict.status == NilpotencyStatus::Nilpotent, || "descended derivation not nilpotent".into())?;
    let dflow = exp_flow(&pres.derivation, cap).map_err(|e| e.to_string())?;
    ensure(dflow.preserves(rel).map_err(|e| e.to_string())?, || "flow does not preserve uv - w^3".into())?;
    ensure(dflow.satisfies_group_law().map_err(|e| e.to_string())?, || "descended group law fails".into())?;
    Ok(format!("50 suspensions annihilate uv - p, group law on {group_checked} flows, orbit avoids 0, (3,2) descent exact"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("Schwartz identities", schwartz_identities),
        ("Platonic equivalence sweep", platonic_sweep),
        ("quasirationality equivalence", quasirational_sweep),
        ("Hilbert coefficients vs oracle", hilbert_coefficients),
        ("(2,3,7) profile", profile_237),
        ("Veronese example", veronese_237),
        ("cyclic quotients", cyclic_quotients),
        ("cone surface sweep", cone_sweep),
        ("LND suite", lnd_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
