//! The reproduction suite: every worked example and property claim, each
//! reported as one pass/fail record. Pseudorandom inputs come from fixed
//! seeds so repeated runs print identical bytes.

use std::sync::Arc;

use kummerlab_core::charsum::{
    binomial_congruence, fc_check, fc_expected, quartic_demo, reflection_identity, stickelberger_check,
    Character, GaussSumRing,
};
use kummerlab_core::cyclotomic::{CycElt, CycRing};
use kummerlab_core::error::{Error, Result};
use kummerlab_core::exact::integer::{divisors, int, primes_below};
use kummerlab_core::ideal_primes::{expected_map_count, maps_for_ring};
use kummerlab_core::monoid::{factor_into_irreducibles, singular_demo, HilbertMonoid, ResidueMonoid};
use kummerlab_core::quad::{
    b_doubleprime_check, catalog, enumerate_quad_maps, gauss_lemma_check, prime_square_anomaly, QuadElt,
    QuadOrder,
};
use kummerlab_core::valuation::{divides_exact, valuation_oracle, KummerPrime, Valuator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::Limits;
use crate::report::SCHEMA;

#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub group: &'static str,
    pub id: String,
    pub label: &'static str,
    pub pass: bool,
    pub detail: Value,
}

impl Claim {
    pub fn to_json(&self) -> String {
        json!({
            "schema": SCHEMA,
            "group": self.group,
            "id": self.id,
            "label": self.label,
            "pass": self.pass,
            "detail": self.detail,
        })
        .to_string()
    }

    pub fn to_text(&self) -> String {
        format!("{} {}  [{}]", if self.pass { "PASS" } else { "FAIL" }, self.id, self.label)
    }
}

type Check = Box<dyn Fn(&Limits) -> Result<(bool, Value)>>;

struct Entry {
    group: &'static str,
    id: String,
    label: &'static str,
    check: Check,
}

fn entry(group: &'static str, id: impl Into<String>, label: &'static str, check: Check) -> Entry {
    Entry { group, id: id.into(), label, check }
}

/// Claim ids in run order, with their groups.
pub fn claim_ids() -> Vec<(&'static str, String)> {
    entries().into_iter().map(|e| (e.group, e.id)).collect()
}

fn selected(e: &Entry, filter: Option<&str>) -> bool {
    filter.is_none_or(|f| e.group == f || e.id.starts_with(f))
}

/// Runs every claim matching `filter` (a group name or an id prefix).
pub fn run(filter: Option<&str>, limits: &Limits) -> Vec<Claim> {
    entries()
        .into_iter()
        .filter(|e| selected(e, filter))
        .map(|e| {
            let (pass, detail) = match (e.check)(limits) {
                Ok(r) => r,
                Err(err) => (false, json!({ "error": err.to_string() })),
            };
            Claim { group: e.group, id: e.id, label: e.label, pass, detail }
        })
        .collect()
}

pub fn summary_json(claims: &[Claim]) -> String {
    let passed = claims.iter().filter(|c| c.pass).count();
    json!({
        "schema": SCHEMA,
        "summary": { "passed": passed, "total": claims.len(), "pass": passed == claims.len() },
    })
    .to_string()
}

fn random_element(ring: &Arc<CycRing>, rng: &mut ChaCha8Rng, bound: i64) -> CycElt {
    loop {
        let c: Vec<i64> = (0..ring.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let x = CycElt::from_i64(ring, &c);
        if !x.is_zero() {
            return x;
        }
    }
}

const KUMMER_ELEMENTS: usize = 500;
const COMPLETENESS_PAIRS: usize = 200;
const MAXIMAL_FRACTIONS: usize = 200;

fn entries() -> Vec<Entry> {
    let mut out = Vec::new();

    for lambda in [3u64, 5, 7, 11, 13] {
        out.push(entry("census", format!("census/lambda={lambda}"), "Jacobi maps", Box::new(move |_| {
            let ring = CycRing::prime(lambda)?;
            let mut bad = Vec::new();
            let primes = primes_below(200);
            for &p in &primes {
                let got = maps_for_ring(&ring, p)?.len() as u64;
                if got != expected_map_count(lambda, p) {
                    bad.push(p);
                }
            }
            Ok((bad.is_empty(), json!({"primes": primes.len(), "mismatches": bad})))
        })));
    }
    out.push(entry("census", "census/lambda=5/p=11", "Jacobi maps", Box::new(|_| {
        let maps = maps_for_ring(&CycRing::prime(5)?, 11)?;
        let xi: Vec<String> = maps.iter().map(|m| m.xi().to_string()).collect();
        Ok((xi == ["9", "5", "4", "3"], json!({ "xi": xi })))
    })));

    out.push(entry("fc", "fc/p=13/i=8,k=9", "Jacobi's congruence", Box::new(|_| {
        let r = fc_check(13, 8, 9)?;
        Ok((r.pass && r.binomial == "35" && r.expected == 9, serde_json::to_value(&r).expect("serializes")))
    })));
    for p in [5u64, 7, 11, 13] {
        out.push(entry("fc", format!("fc/p={p}"), "Jacobi's congruence", Box::new(move |_| {
            let n = p as i64 - 1;
            let mut checked = 0;
            let mut bad = Vec::new();
            for i in 1..n {
                for k in (1..n).filter(|k| i + k != n) {
                    checked += 1;
                    if !fc_check(p, i, k)?.pass {
                        bad.push((i, k));
                    }
                }
            }
            // the excluded diagonal is rejected, not silently evaluated
            let excluded = matches!(fc_expected(p, 1, n - 1), Err(Error::ExcludedIndex { .. }));
            Ok((bad.is_empty() && excluded, json!({"pairs": checked, "mismatches": bad})))
        })));
    }

    for p in primes_below(51).into_iter().filter(|&p| p > 2) {
        out.push(entry("reflection", format!("reflection/p={p}"), "Gauss and Jacobi sums", Box::new(move |_| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for order in divisors(p - 1).into_iter().filter(|&l| l >= 2) {
                let chi = Character::new(p, order)?;
                let n = order as i64;
                for i in 1..n {
                    for k in (1..n).filter(|k| (i + k) % n != 0) {
                        checked += 1;
                        if !reflection_identity(&chi, i, k)?.pass {
                            bad.push((order, i, k));
                        }
                    }
                }
            }
            Ok((bad.is_empty(), json!({"checked": checked, "failures": bad})))
        })));
    }

    for (lambda, p) in [(3u64, 7u64), (3, 13), (5, 11), (5, 31), (7, 29)] {
        out.push(entry(
            "stickelberger",
            format!("stickelberger/lambda={lambda},p={p}"),
            "prime factorization of J",
            Box::new(move |l| {
                let r = stickelberger_check(lambda, p, l.uniformizer_bound)?;
                Ok((r.pass, serde_json::to_value(&r).expect("serializes")))
            }),
        ));
    }

    for p in [5u64, 13, 17, 29] {
        out.push(entry("quartic", format!("quartic/p={p}"), "quartic case", Box::new(move |_| {
            let q = quartic_demo(p)?;
            let b = binomial_congruence(p)?;
            Ok((q.pass && b.pass, json!({"quartic": q, "binomial": b})))
        })));
    }
    out.push(entry("quartic", "quartic/binomial/p=13", "quartic case", Box::new(|_| {
        let b = binomial_congruence(13)?;
        Ok((b.pass && (b.a, b.b) == (3, 1) && b.sign == -1, serde_json::to_value(&b).expect("serializes")))
    })));

    for (lambda, p, expect) in [(3u64, 3u64, &[1i64, -1][..]), (5, 5, &[0, 0, 1, -1][..])] {
        out.push(entry(
            "kummer",
            format!("kummer/uniformizer/lambda={lambda},p={p}"),
            "Kummer multiplicity",
            Box::new(move |l| {
                let ring = CycRing::prime(lambda)?;
                let map = &maps_for_ring(&ring, p)?[0];
                let k = KummerPrime::new(map, l.uniformizer_bound)?;
                let pass = *k.psi() == CycElt::from_i64(&ring, expect);
                Ok((pass, json!({"psi": k.psi().to_string(), "certificate": k.certificate().to_string()})))
            }),
        ));
    }
    for lambda in [3u64, 5, 7] {
        out.push(entry("kummer", format!("kummer/lambda={lambda}"), "Kummer multiplicity", Box::new(move |l| {
            kummer_agreement(lambda, l)
        })));
    }

    for lambda in [3u64, 5, 7] {
        out.push(entry("norm", format!("norm/lambda={lambda}"), "norms", Box::new(move |l| {
            let ring = CycRing::prime(lambda)?;
            let v = Valuator::new(&ring, l.search())?;
            let mut rng = ChaCha8Rng::seed_from_u64(100 + lambda);
            let mut primes_seen = 0usize;
            let mut failures = Vec::new();
            for _ in 0..KUMMER_ELEMENTS {
                let x = random_element(&ring, &mut rng, 4);
                // factorize checks sum f * mu = v_p(N(x)) for every p | N(x)
                match v.factorize(&x) {
                    Ok(f) => primes_seen += f.records.len(),
                    Err(e) => failures.push(format!("{x}: {e}")),
                }
            }
            Ok((failures.is_empty(), json!({"elements": KUMMER_ELEMENTS, "records": primes_seen, "failures": failures})))
        })));
    }

    out.push(entry("completeness", "completeness/pairs", "divisibility", Box::new(completeness)));

    monoid_entries(&mut out);
    quad_entries(&mut out);

    for (order, p) in [(2u64, 5u64), (3, 7), (3, 13), (5, 11)] {
        out.push(entry("descent", format!("descent/lambda={order},p={p}"), "Gauss sums", Box::new(move |_| {
            let g = GaussSumRing::new(p, order)?;
            let h = g.gauss_power_descent(1)?;
            let norm_ok = h.norm() == int(p as i64).pow((order * (order - 1) / 2) as u32);
            Ok((norm_ok, json!({"power": h.to_string(), "norm": h.norm().to_string()})))
        })));
    }
    out.push(entry("descent", "descent/psi/lambda=5,p=11", "Gauss sums", Box::new(|_| {
        let g = GaussSumRing::new(11, 5)?;
        let psi = g.psi_via_gauss(1, 1)?;
        let j = g.character().jacobi_sum(1, 1);
        Ok((psi == j.neg(), json!({"psi": psi.to_string(), "j": j.to_string()})))
    })));

    out
}

fn kummer_agreement(lambda: u64, limits: &Limits) -> Result<(bool, Value)> {
    let ring = CycRing::prime(lambda)?;
    let v = Valuator::new(&ring, limits.search())?;
    let mut primes = Vec::new();
    for p in primes_below(51) {
        primes.extend(v.primes_over(p)?.iter().cloned());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(lambda);
    let xs: Vec<CycElt> = (0..KUMMER_ELEMENTS).map(|_| random_element(&ring, &mut rng, 4)).collect();
    let mut failures: Vec<String> = Vec::new();
    let mut positive = 0usize;
    for k in &primes {
        let mus: Vec<u32> = xs.iter().map(|x| k.multiplicity(x)).collect::<Result<_>>()?;
        for (x, &mu) in xs.iter().zip(&mus) {
            positive += usize::from(mu > 0);
            let oracle = valuation_oracle(x, k.map())?;
            if oracle != mu {
                failures.push(format!("{}: mu({x}) = {mu}, oracle {oracle}", k.map()));
            }
            let profile = k.divisibility_profile(x, mu + 2);
            if profile.iter().enumerate().any(|(j, &b)| b != (j as u32 <= mu)) {
                failures.push(format!("{}: profile of {x} is not an interval", k.map()));
            }
        }
        for i in (0..xs.len() - 1).step_by(2) {
            let (x, y) = (&xs[i], &xs[i + 1]);
            let (mx, my) = (mus[i], mus[i + 1]);
            if k.multiplicity(&x.mul(y))? != mx + my {
                failures.push(format!("{}: mu not additive on ({x})({y})", k.map()));
            }
            let s = x.add(y);
            if !s.is_zero() && k.multiplicity(&s)? < mx.min(my) {
                failures.push(format!("{}: ultrametric fails on ({x}) + ({y})", k.map()));
            }
        }
    }
    Ok((
        failures.is_empty(),
        json!({"elements": xs.len(), "maps": primes.len(), "positive": positive, "failures": failures}),
    ))
}

fn completeness(limits: &Limits) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let valuators: Vec<Valuator> =
        [3u64, 5, 7].iter().map(|&l| Valuator::new(&CycRing::prime(l)?, limits.search())).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut divisible = 0usize;
    for i in 0..COMPLETENESS_PAIRS {
        let v = &valuators[i % 3];
        let ring = v.ring();
        let y = random_element(ring, &mut rng, 3);
        let x = if i % 2 == 0 { y.mul(&random_element(ring, &mut rng, 3)) } else { random_element(ring, &mut rng, 4) };
        let exact = divides_exact(&y, &x)?;
        match v.divides(&y, &x) {
            Ok(d) => divisible += usize::from(d),
            Err(e) => failures.push(format!("({y}) | ({x}): {e}")),
        }
        let everywhere = v.defined_everywhere(&x, &y)?;
        if everywhere != exact.is_some() {
            failures.push(format!("({x})/({y}): defined everywhere {everywhere}, integral {}", exact.is_some()));
        }
    }
    Ok((failures.is_empty(), json!({"pairs": COMPLETENESS_PAIRS, "divisible": divisible, "failures": failures})))
}

fn monoid_entries(out: &mut Vec<Entry>) {
    const L: &str = "Hilbert monoids";
    let m4 = || HilbertMonoid::trivial(4);
    out.push(entry("monoid", "monoid/factor-441", L, Box::new(move |l| {
        let fs = factor_into_irreducibles(&m4()?, 441, true, l.enum_cap)?;
        Ok((fs == vec![vec![9, 49], vec![21, 21]], json!({ "factorizations": fs })))
    })));
    out.push(entry("monoid", "monoid/defined-at", L, Box::new(move |_| {
        let m = m4()?;
        let a = m.defined_at(3, 9, 21)?;
        let b = m.defined_at(3, 9, 441)?;
        let c = m.defined_at(3, 9, 9261)?;
        let pass = a.defined && a.value == Some(0) && b.defined && !c.defined && c.infinite;
        Ok((pass, json!({"9/21": a, "9/21^2": b, "9/21^3": c})))
    })));
    out.push(entry("monoid", "monoid/multiplicity", L, Box::new(move |_| {
        let m = m4()?;
        let default = m.multiplicity(3, 9, None)?;
        let mut bad = Vec::new();
        for a in (1..=1000).filter(|&a| m.contains(a)) {
            let mus: Vec<u32> = [21, 33, 57].iter().map(|&q| m.multiplicity(3, a, Some(q))).collect::<Result<_>>()?;
            if mus.iter().any(|&mu| mu != mus[0]) {
                bad.push(a);
            }
        }
        Ok((default == 2 && bad.is_empty(), json!({"uniformizer": m.uniformizer(3)?, "mu_9": default, "dependent": bad})))
    })));
    out.push(entry("monoid", "monoid/class-group", L, Box::new(move |_| {
        let c4 = m4()?.class_group()?;
        let c5 = HilbertMonoid::full(5)?.class_group()?;
        let c8 = HilbertMonoid::trivial(8)?.class_group()?;
        let pass = c4.order == 2 && c5.order == 1 && c8.invariant_factors == [2, 2];
        Ok((pass, json!({"m=4": c4.structure, "m=5,H=G": c5.structure, "m=8": c8.structure})))
    })));
    out.push(entry("monoid", "monoid/square-test", L, Box::new(move |_| {
        let m = m4()?;
        let mut bad = Vec::new();
        let mut squares = 0usize;
        for a in (1..=10_000).filter(|&a| m.contains(a)) {
            let s = m.square_test(a)?;
            squares += usize::from(s.square_in_m);
            if s.square_in_m != s.square_in_qm {
                bad.push(a);
            }
        }
        Ok((bad.is_empty(), json!({"squares": squares, "disagreements": bad})))
    })));
    out.push(entry("monoid", "monoid/singular", L, Box::new(|_| {
        let r = singular_demo()?;
        Ok((r.pass, serde_json::to_value(&r).expect("serializes")))
    })));
}

fn quad_entries(out: &mut Vec<Entry>) {
    const L: &str = "singular orders";
    out.push(entry("quad", "quad/sqrt-3/phi2", L, Box::new(|_| {
        let o = QuadOrder::named(0, 3, "Z[sqrt(-3)]")?;
        let maps = enumerate_quad_maps(&o, 2)?;
        let r = b_doubleprime_check(&maps[0], &QuadElt::from_i64(&o, 1, 1), &QuadElt::from_i64(&o, 2, 0))?;
        Ok((maps.len() == 1 && r.singular, serde_json::to_value(&r).expect("serializes")))
    })));
    out.push(entry("quad", "quad/sqrt-3/prime-square", L, Box::new(|_| {
        let r = prime_square_anomaly()?;
        Ok((r.pass, serde_json::to_value(&r).expect("serializes")))
    })));
    out.push(entry("quad", "quad/sqrt-3/conductor", L, Box::new(|_| {
        let o = QuadOrder::named(0, 3, "Z[sqrt(-3)]")?;
        let f = o.conductor();
        Ok((f == int(2) && !o.is_integrally_closed(), json!({ "conductor": f.to_string() })))
    })));
    out.push(entry("quad", "quad/sqrt-3/gauss-lemma", L, Box::new(|_| {
        let o = QuadOrder::named(0, 3, "Z[sqrt(-3)]")?;
        let one = QuadElt::from_i64(&o, 1, 0);
        let r = gauss_lemma_check(&[one.clone(), one.clone(), one])?;
        Ok((r.reducible_over_k && !r.reducible_over_o, serde_json::to_value(&r).expect("serializes")))
    })));
    for p in [2u64, 3, 5] {
        out.push(entry("quad", format!("quad/pi/p={p}"), L, Box::new(move |_| {
            let o = QuadOrder::new(0, (p * p) as i64)?;
            let maps = enumerate_quad_maps(&o, p)?;
            let r = b_doubleprime_check(&maps[0], &QuadElt::from_i64(&o, 0, 1), &QuadElt::from_i64(&o, p as i64, 0))?;
            Ok((maps.len() == 1 && r.singular, serde_json::to_value(&r).expect("serializes")))
        })));
    }
    out.push(entry("quad", "quad/maximal-controls", L, Box::new(|_| {
        let cat = catalog()?;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut rows = Vec::new();
        let mut pass = true;
        for o in cat.orders()?.into_iter().filter(|o| o.is_integrally_closed()) {
            let mut witnesses = 0usize;
            let mut fractions = 0usize;
            while fractions < MAXIMAL_FRACTIONS {
                let a = QuadElt::from_i64(&o, rng.gen_range(-20..=20), rng.gen_range(-20..=20));
                let b = QuadElt::from_i64(&o, rng.gen_range(-20..=20), rng.gen_range(-20..=20));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                fractions += 1;
                for p in primes_below(30) {
                    for m in enumerate_quad_maps(&o, p)? {
                        witnesses += usize::from(b_doubleprime_check(&m, &a, &b)?.singular);
                    }
                }
            }
            pass &= witnesses == 0;
            rows.push(json!({"order": o.name(), "fractions": fractions, "witnesses": witnesses}));
        }
        Ok((pass, Value::Array(rows)))
    })));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_grouped() {
        let ids = claim_ids();
        let mut seen = std::collections::BTreeSet::new();
        for (group, id) in &ids {
            assert!(seen.insert(id.clone()), "duplicate {id}");
            assert!(id.starts_with(group), "{id} outside {group}");
        }
    }

    #[test]
    fn filter_selects_group() {
        let claims = run(Some("monoid"), &Limits::default());
        assert!(!claims.is_empty());
        assert!(claims.iter().all(|c| c.group == "monoid" && c.pass), "{claims:?}");
    }
}
