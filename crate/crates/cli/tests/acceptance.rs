//! One line per acceptance criterion. Runs the reproduction suite once
//! in-process, cross-checks a few values directly against the core crate,
//! then runs the binary twice to compare bytes.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use kummerlab::commands::Limits;
use kummerlab::reproduce::{self, Claim};
use kummerlab_core::cyclotomic::CycRing;
use kummerlab_core::exact::integer::primes_below;
use kummerlab_core::ideal_primes::maps_for_ring;
use kummerlab_core::monoid::{factor_into_irreducibles, HilbertMonoid, DEFAULT_ENUM_CAP};

fn ord(p: u64, lambda: u64) -> u64 {
    let mut x = p % lambda;
    let mut k = 1;
    while x != 1 {
        x = x * p % lambda;
        k += 1;
    }
    k
}

// map counts from the multiplicative order directly, not through the library formula
fn census_direct() -> Result<(), String> {
    for lambda in [3u64, 5, 7, 11, 13] {
        let ring = CycRing::prime(lambda).map_err(|e| e.to_string())?;
        for p in primes_below(200) {
            let want = if p == lambda { 1 } else { (lambda - 1) / ord(p, lambda) };
            let got = maps_for_ring(&ring, p).map_err(|e| e.to_string())?.len() as u64;
            if got != want {
                return Err(format!("lambda={lambda} p={p}: {got} maps, expected {want}"));
            }
        }
    }
    Ok(())
}

fn factor_441_direct() -> Result<(), String> {
    let m = HilbertMonoid::trivial(4).map_err(|e| e.to_string())?;
    let mut f = factor_into_irreducibles(&m, 441, true, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
    for x in &mut f {
        x.sort();
    }
    f.sort();
    if f == vec![vec![9, 49], vec![21, 21]] {
        Ok(())
    } else {
        Err(format!("441 factors as {f:?}"))
    }
}

fn reproduce_json() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kummerlab"))
        .args(["reproduce", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("reproduce exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Result<(), String> {
    let a = reproduce_json()?;
    let b = reproduce_json()?;
    if a.is_empty() {
        return Err("empty output".into());
    }
    if a != b {
        let line = a.split(|&c| c == b'\n').zip(b.split(|&c| c == b'\n')).position(|(x, y)| x != y);
        return Err(format!("outputs differ (first differing line {line:?})"));
    }
    Ok(())
}

fn group_result(groups: &BTreeMap<&str, Vec<&Claim>>, group: &str) -> Result<(), String> {
    let claims = groups.get(group).ok_or_else(|| format!("no claims in group {group}"))?;
    let failed: Vec<&str> = claims.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(format!("failed: {}", failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let claims = reproduce::run(None, &Limits::default());
    let mut groups: BTreeMap<&str, Vec<&Claim>> = BTreeMap::new();
    for c in &claims {
        groups.entry(c.group).or_default().push(c);
    }
    let g = |name: &str| group_result(&groups, name);

    let results: Vec<(&str, Result<(), String>)> = vec![
        ("Jacobi-map census", g("census").and_then(|_| census_direct())),
        ("fundamental congruence", g("fc")),
        ("reflection identity", g("reflection")),
        ("Stickelberger factorization", g("stickelberger")),
        ("quartic corollary", g("quartic")),
        ("Kummer multiplicity vs oracle", g("kummer")),
        ("norm consistency", g("norm")),
        ("completeness", g("completeness")),
        ("monoid suite", g("monoid").and_then(|_| factor_441_direct())),
        ("singular-order suite", g("quad")),
        ("Gauss-sum descent", g("descent")),
        ("determinism", determinism()),
    ];

    let mut ok = true;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(e) => {
                ok = false;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    let passed = results.iter().filter(|(_, r)| r.is_ok()).count();
    println!("{passed}/{} criteria passed", results.len());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
