//! One function per subcommand. Each returns a [`Report`] whose `pass`
//! decides the exit status.

use std::fmt;
use std::sync::Arc;

use kummerlab_core::charsum::{
    binomial_congruence, fc_check, quartic_demo, reflection_identity, stickelberger_check, Character,
    GaussSumRing,
};
use kummerlab_core::cyclotomic::CycRing;
use kummerlab_core::error::Error;
use kummerlab_core::ideal_primes::{expected_map_count, maps_for_ring};
use kummerlab_core::monoid::{
    factor_into_irreducibles, singular_demo, HilbertMonoid, ResidueMonoid,
};
use kummerlab_core::quad::{
    b_doubleprime_check, enumerate_quad_maps, gauss_lemma_check, QuadElt, QuadOrder,
};
use kummerlab_core::valuation::{valuation_oracle, SearchLimits, Valuator};
use serde_json::{json, Value};

use crate::parse::{parse_cyclotomic, parse_quad, ParseError};
use crate::report::{object, value, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub uniformizer_bound: u32,
    pub enum_cap: u64,
    pub trial_div: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            uniformizer_bound: kummerlab_core::valuation::DEFAULT_UNIFORMIZER_BOUND,
            enum_cap: kummerlab_core::monoid::DEFAULT_ENUM_CAP,
            trial_div: kummerlab_core::valuation::DEFAULT_TRIAL_DIVISION,
        }
    }
}

impl Limits {
    pub fn search(&self) -> SearchLimits {
        SearchLimits { uniformizer_bound: self.uniformizer_bound, trial_division: self.trial_div }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse { arg: String, err: ParseError },
    Core(Error),
    Usage(String),
}

impl CliError {
    /// 1 for a failed mathematical check, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::CheckFailed(_)) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { arg, err } => write!(f, "cannot parse \"{arg}\": {err}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult = std::result::Result<Report, CliError>;

fn cyc(src: &str, ring: &Arc<CycRing>) -> std::result::Result<kummerlab_core::cyclotomic::CycElt, CliError> {
    parse_cyclotomic(src, ring).map_err(|err| CliError::Parse { arg: src.to_string(), err })
}

fn quad(src: &str, order: &Arc<QuadOrder>) -> std::result::Result<QuadElt, CliError> {
    parse_quad(src, order).map_err(|err| CliError::Parse { arg: src.to_string(), err })
}

fn prime_ring(lambda: u64) -> std::result::Result<Arc<CycRing>, CliError> {
    if !kummerlab_core::exact::integer::is_prime(lambda) {
        return Err(Error::NotPrime(lambda).into());
    }
    Ok(CycRing::prime(lambda)?)
}

pub fn maps(lambda: u64, p: u64) -> CliResult {
    let ring = prime_ring(lambda)?;
    let maps = maps_for_ring(&ring, p)?;
    let expected = expected_map_count(lambda, p);
    let mut lines = vec![format!("{} Jacobi maps of Z[a], a^{lambda} = 1, at p = {p} (expected {expected})", maps.len())];
    let mut rows = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        lines.push(format!("  [{i}] {m}  label {}  kernel index {}", m.label(), m.kernel().index()));
        rows.push(json!({
            "xi": m.xi().to_string(),
            "label": m.label().to_string(),
            "factor": m.factor().to_string(),
            "f": m.f(),
            "kernel_index": m.kernel().index().to_string(),
        }));
    }
    let pass = maps.len() as u64 == expected;
    let result = object(vec![
        ("lambda", json!(lambda)),
        ("p", json!(p)),
        ("expected", json!(expected)),
        ("maps", Value::Array(rows)),
    ]);
    Ok(Report::new("maps", pass, result, lines))
}

pub fn factor(lambda: u64, expr: &str, limits: Limits) -> CliResult {
    let ring = prime_ring(lambda)?;
    let x = cyc(expr, &ring)?;
    let v = Valuator::new(&ring, limits.search())?;
    let fac = v.factorize(&x)?;
    let mut lines = vec![format!("x = {x}, N(x) = {}", fac.norm)];
    if fac.is_unit() {
        lines.push("  unit".to_string());
    }
    let mut rows = Vec::new();
    for r in &fac.records {
        let m = r.prime.map();
        lines.push(format!("  p = {}, {}: mu = {}, psi = {}", m.p(), m, r.mu, r.prime.psi()));
        rows.push(json!({
            "p": m.p(),
            "xi": m.xi().to_string(),
            "f": m.f(),
            "mu": r.mu,
            "psi": r.prime.psi().to_string(),
            "certificate": r.prime.certificate().to_string(),
        }));
    }
    let result = object(vec![
        ("element", json!(x.to_string())),
        ("norm", json!(fac.norm.to_string())),
        ("primes", Value::Array(rows)),
    ]);
    Ok(Report::new("factor", true, result, lines))
}

pub fn valuation(lambda: u64, p: u64, expr: &str, limits: Limits) -> CliResult {
    let ring = prime_ring(lambda)?;
    let x = cyc(expr, &ring)?;
    let v = Valuator::new(&ring, limits.search())?;
    let mut lines = vec![format!("x = {x} at p = {p}")];
    let mut rows = Vec::new();
    let mut pass = true;
    for k in v.primes_over(p)?.iter() {
        let mu = k.multiplicity(&x)?;
        let oracle = valuation_oracle(&x, k.map())?;
        pass &= mu == oracle;
        lines.push(format!("  {}: mu = {mu}, oracle = {oracle}, psi = {}", k.map(), k.psi()));
        rows.push(json!({
            "xi": k.map().xi().to_string(),
            "f": k.map().f(),
            "mu": mu,
            "mu_oracle": oracle,
            "psi": k.psi().to_string(),
        }));
    }
    let result = object(vec![("element", json!(x.to_string())), ("p", json!(p)), ("maps", Value::Array(rows))]);
    Ok(Report::new("valuation", pass, result, lines))
}

pub fn divides(lambda: u64, d: &str, x: &str, limits: Limits) -> CliResult {
    let ring = prime_ring(lambda)?;
    let (d, x) = (cyc(d, &ring)?, cyc(x, &ring)?);
    let v = Valuator::new(&ring, limits.search())?;
    let ok = v.divides(&d, &x)?;
    let quotient = kummerlab_core::valuation::divides_exact(&d, &x)?;
    let q = quotient.as_ref().map(|q| q.to_string());
    let mut lines = vec![format!("({d}) | ({x}): {ok}")];
    if let Some(q) = &q {
        lines.push(format!("  quotient {q}"));
    }
    let result = object(vec![
        ("divisor", json!(d.to_string())),
        ("element", json!(x.to_string())),
        ("divides", json!(ok)),
        ("quotient", json!(q)),
    ]);
    Ok(Report::new("divides", true, result, lines))
}

pub fn jacobi_sum(p: u64, order: u64, i: i64, k: i64) -> CliResult {
    let chi = Character::new(p, order)?;
    let j = chi.jacobi_sum(i, k);
    let mut lines = vec![format!("J(chi^{i}, chi^{k}) mod {p}, order {order}, g = {}: {j}", chi.primitive_root())];
    let mut entries = vec![
        ("p", json!(p)),
        ("order", json!(order)),
        ("g", json!(chi.primitive_root())),
        ("i", json!(i)),
        ("k", json!(k)),
        ("j", json!(j.to_string())),
        ("psi", json!(j.neg().to_string())),
    ];
    let pass = match reflection_identity(&chi, i, k) {
        Ok(r) => {
            lines.push(format!("  J * sigma_-1(J) = {}", r.product));
            entries.push(("reflection", value(&r)));
            r.pass
        }
        Err(Error::DegenerateIndex { .. }) => {
            lines.push("  degenerate indices: reflection identity not applicable".into());
            true
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Report::new("jacobi-sum", pass, object(entries), lines))
}

pub fn gauss_sum(p: u64, order: u64, i: i64) -> CliResult {
    let g = GaussSumRing::new(p, order)?;
    let h = g.gauss_power_descent(i)?;
    let mut lines = vec![format!("(a^{i}, x)^{order} = {h}  (fixed by every x -> x^j)")];
    lines.push(format!("  norm {}", h.norm()));
    let mut entries = vec![
        ("p", json!(p)),
        ("order", json!(order)),
        ("i", json!(i)),
        ("power", json!(h.to_string())),
        ("norm", json!(h.norm().to_string())),
    ];
    let mut pass = true;
    if order > 2 && (2 * i).rem_euclid(order as i64) != 0 {
        let psi = g.psi_via_gauss(i, i)?;
        let j = g.character().jacobi_sum(i, i);
        pass = psi == j.neg();
        lines.push(format!("  psi_(i,i) from Gauss sums = {psi}, -J = {}", j.neg()));
        entries.push(("psi", json!(psi.to_string())));
    }
    Ok(Report::new("gauss-sum", pass, object(entries), lines))
}

pub fn fc(p: u64, pair: Option<(i64, i64)>) -> CliResult {
    let n = p as i64 - 1;
    let pairs: Vec<(i64, i64)> = match pair {
        Some(pk) => vec![pk],
        None => (1..n).flat_map(|i| (1..n).map(move |k| (i, k))).filter(|(i, k)| i + k != n).collect(),
    };
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (i, k) in pairs {
        let r = fc_check(p, i, k)?;
        pass &= r.pass;
        if !r.pass || pair.is_some() {
            lines.push(format!(
                "  (i, k) = ({i}, {k}): J -> {} mod {p}, expected {} ({:?}) {}",
                r.j_image,
                r.expected,
                r.case,
                if r.pass { "ok" } else { "MISMATCH" }
            ));
        }
        rows.push(value(&r));
    }
    lines.insert(0, format!("Jacobi's congruence mod {p}: {} index pairs", rows.len()));
    Ok(Report::new("fc-check", pass, object(vec![("p", json!(p)), ("checks", Value::Array(rows))]), lines))
}

pub fn stickelberger(lambda: u64, p: u64, limits: Limits) -> CliResult {
    let r = stickelberger_check(lambda, p, limits.uniformizer_bound)?;
    let mut lines = vec![format!("J(chi, chi) = {} mod lambda = {lambda}, p = {p}, g = {}, m = {}", r.j, r.g, r.m)];
    for row in &r.rows {
        lines.push(format!(
            "  t = {}: a -> {}, expected {}, kummer {}, oracle {}",
            row.t, row.xi, row.expected, row.mu_kummer, row.mu_oracle
        ));
    }
    lines.push(format!("  total multiplicity {}, N(J) = {}", r.total, r.norm));
    Ok(Report::new("stickelberger", r.pass, value(&r), lines))
}

pub fn quartic(p: u64) -> CliResult {
    let q = quartic_demo(p)?;
    let b = binomial_congruence(p)?;
    let lines = vec![
        format!("J(chi, chi) = {} for the quartic character mod {p}", q.j),
        format!("  a = {}, C(2m, m)/2 = {} mod p, sign {}", q.a, q.half_binomial, q.sign),
        format!("  2a = {} = {} * C(2n, n) mod p", b.two_a_mod, b.sign),
    ];
    let pass = q.pass && b.pass;
    Ok(Report::new("quartic", pass, object(vec![("quartic", value(&q)), ("binomial", value(&b))]), lines))
}

pub fn binomial(p: u64) -> CliResult {
    let b = binomial_congruence(p)?;
    let lines = vec![format!(
        "p = {p} = {}^2 + 4*{}^2: 2a = {} mod p, C({}, {}) = {} mod p, sign {}",
        b.a,
        b.b,
        b.two_a_mod,
        2 * b.n,
        b.n,
        b.binomial_mod,
        b.sign
    )];
    Ok(Report::new("binomial", b.pass, value(&b), lines))
}

#[derive(Clone, Debug)]
pub enum MonoidAction {
    Factor(u64),
    ClassGroup,
    DefinedAt(u64, u64, u64),
    Multiplicity(u64, u64),
    Square(u64),
    DemoSingular,
}

pub fn monoid(m: u64, subgroup: &[u64], action: &MonoidAction, limits: Limits) -> CliResult {
    if let MonoidAction::DemoSingular = action {
        let r = singular_demo()?;
        let lines = vec![
            format!("N = {{n : n = 0, 1, 2 mod 4}}: map at 2 at 6/2: {}", r.six_over_two.display_value()),
            format!("  at 2/6: {}", r.two_over_six.display_value()),
            format!(
                "  9 square in N: {}, in Q(N): {} (witness {:?})",
                r.nine.square_in_m, r.nine.square_in_qm, r.nine.witness
            ),
        ];
        return Ok(Report::new("monoid", r.pass, value(&r), lines));
    }
    let mon = HilbertMonoid::new(m, subgroup)?;
    let label = mon.label();
    match action {
        MonoidAction::Factor(a) => {
            let fs = factor_into_irreducibles(&mon, *a, true, limits.enum_cap)?;
            let mut lines = vec![format!("{a} in {label}: {} factorization(s) into irreducibles", fs.len())];
            for f in &fs {
                let s: Vec<String> = f.iter().map(u64::to_string).collect();
                lines.push(format!("  {}", if s.is_empty() { "1".into() } else { s.join(" * ") }));
            }
            let mut entries = vec![("element", json!(a)), ("factorizations", json!(fs))];
            match mon.ideal_factorization(*a) {
                Ok(ideal) => {
                    let parts: Vec<String> = ideal
                        .iter()
                        .map(|(q, e)| format!("{}^{e}{}", q.p, if q.principal { "" } else { " (ideal)" }))
                        .collect();
                    lines.push(format!("  ideal primes: {}", parts.join(", ")));
                    let rows: Vec<Value> = ideal.iter().map(|(q, e)| json!({"prime": value(q), "exponent": e})).collect();
                    entries.push(("ideal_factorization", Value::Array(rows)));
                }
                Err(Error::OutsideTheory(s)) => {
                    lines.push(format!("  ideal primes: outside theory ({s})"));
                    entries.push(("ideal_factorization", json!("outside theory")));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(Report::new("monoid", true, object(entries), lines))
        }
        MonoidAction::ClassGroup => {
            let c = mon.class_group()?;
            let lines = vec![format!("Cl({label}) = {} of order {}", c.structure, c.order)];
            Ok(Report::new("monoid", true, value(&c), lines))
        }
        MonoidAction::DefinedAt(p, a, b) => {
            let d = mon.defined_at(*p, *a, *b)?;
            let lines = vec![format!("map at {p} on {label} at {a}/{b}: {}", d.display_value())];
            Ok(Report::new("monoid", true, value(&d), lines))
        }
        MonoidAction::Multiplicity(p, a) => {
            let q = mon.uniformizer(*p)?;
            let mu = mon.multiplicity(*p, *a, None)?;
            let lines = vec![format!("ideal prime {p} divides {a} exactly {mu} times (uniformizer {q})")];
            Ok(Report::new("monoid", true, json!({"p": p, "element": a, "uniformizer": q, "mu": mu}), lines))
        }
        MonoidAction::Square(a) => {
            let s = mon.square_test(*a)?;
            let lines = vec![format!("{a}: square in M {}, square in Q(M) {}", s.square_in_m, s.square_in_qm)];
            Ok(Report::new("monoid", s.square_in_m == s.square_in_qm, value(&s), lines))
        }
        MonoidAction::DemoSingular => unreachable!("handled above"),
    }
}

#[derive(Clone, Debug)]
pub enum QuadAction {
    Maps(u64),
    CheckB2 { p: u64, num: String, den: String },
    Conductor,
    GaussLemma { c1: String, c0: String },
}

pub fn quad_cmd(u: i64, v: i64, action: &QuadAction) -> CliResult {
    let order = QuadOrder::new(u, v)?;
    match action {
        QuadAction::Maps(p) => {
            let maps = enumerate_quad_maps(&order, *p)?;
            let mut lines = vec![format!("{} map(s) of {} at p = {p}", maps.len(), order.name())];
            let rows: Vec<Value> = maps
                .iter()
                .map(|m| {
                    lines.push(format!("  {m}, kernel index {}", m.kernel().index()));
                    json!({"theta": m.theta().to_string(), "f": m.f(), "kernel_index": m.kernel().index().to_string()})
                })
                .collect();
            Ok(Report::new("quad", true, json!({"p": p, "maps": rows}), lines))
        }
        QuadAction::CheckB2 { p, num, den } => {
            let (n, d) = (quad(num, &order)?, quad(den, &order)?);
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for m in enumerate_quad_maps(&order, *p)? {
                let r = b_doubleprime_check(&m, &n, &d)?;
                lines.push(format!(
                    "  {m}: defined at x {}, at 1/x {}{}",
                    r.at_x,
                    r.at_inv,
                    if r.singular { "  (singular)" } else { "" }
                ));
                rows.push(value(&r));
            }
            lines.insert(0, format!("x = ({n})/({d}) in {}", order.name()));
            Ok(Report::new("quad", true, json!({"p": p, "checks": rows}), lines))
        }
        QuadAction::Conductor => {
            let f = order.conductor();
            let lines = vec![format!(
                "disc {}, field disc {}, conductor {f}, integrally closed {}",
                order.discriminant(),
                order.field_discriminant(),
                order.is_integrally_closed()
            )];
            let result = json!({
                "discriminant": order.discriminant().to_string(),
                "field_discriminant": order.field_discriminant().to_string(),
                "conductor": f.to_string(),
                "integrally_closed": order.is_integrally_closed(),
            });
            Ok(Report::new("quad", true, result, lines))
        }
        QuadAction::GaussLemma { c1, c0 } => {
            let coeffs = [QuadElt::from_i64(&order, 1, 0), quad(c1, &order)?, quad(c0, &order)?];
            let r = gauss_lemma_check(&coeffs)?;
            let lines = vec![
                format!("{} over {}", r.polynomial, order.name()),
                format!("  reducible over K {}, over O {}, roots {:?}", r.reducible_over_k, r.reducible_over_o, r.roots),
            ];
            Ok(Report::new("quad", true, value(&r), lines))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commands_pass_on_worked_examples() {
        let l = Limits::default();
        assert!(maps(5, 11).unwrap().pass);
        assert!(factor(5, "1 - a", l).unwrap().pass);
        assert!(valuation(5, 11, "2 - a", l).unwrap().pass);
        let d = divides(3, "1 - a", "3", l).unwrap();
        assert_eq!(d.result["divides"], json!(true));
        assert!(jacobi_sum(11, 5, 1, 1).unwrap().pass);
        assert!(gauss_sum(11, 5, 1).unwrap().pass);
        assert!(fc(13, None).unwrap().pass);
        assert!(stickelberger(5, 11, Limits::default()).unwrap().pass);
        assert!(quartic(13).unwrap().pass);
        assert!(binomial(29).unwrap().pass);
        let r = monoid(4, &[1], &MonoidAction::Factor(441), l).unwrap();
        assert_eq!(r.result["factorizations"], json!([[9, 49], [21, 21]]));
        assert!(monoid(0, &[], &MonoidAction::DemoSingular, l).unwrap().pass);
        let r = quad_cmd(0, 3, &QuadAction::CheckB2 { p: 2, num: "1 + t".into(), den: "2".into() }).unwrap();
        assert_eq!(r.result["checks"][0]["singular"], json!(true));
        let r = quad_cmd(0, 3, &QuadAction::GaussLemma { c1: "1".into(), c0: "1".into() }).unwrap();
        assert_eq!(r.result["reducible_over_o"], json!(false));
    }

    #[test]
    fn error_codes() {
        let e = factor(5, "1 +", Limits::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(maps(4, 5).unwrap_err().exit_code(), 2);
        assert_eq!(CliError::Core(Error::CheckFailed("x".into())).exit_code(), 1);
    }
}
