//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cobweb::diagonal::{bell, whitney};
use cobweb::dobinski::{bell_dobinski, bell_exact};
use cobweb::exact_cover::SearchOptions;
use cobweb::layer_grid::{grid_max_chains_closed_form, grid_size, whitney_second_row};
use cobweb::sequence::{is_cobweb_admissible, is_gcd_morphic};
use cobweb::tiling::canonical_options;
use cobweb::{
    AdmissibleSequence, CobwebPoset, FNomialTable, SigmaPolicy, TilingBudget, TilingInstance,
    TilingVerdict,
};
use num_bigint::BigUint;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seq(spec: &str) -> AdmissibleSequence {
    spec.parse().expect("built-in spec")
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

const BUILTINS: &[&str] = &[
    "nat", "fib", "const:1", "const:3", "gauss:2", "gauss:3", "even1", "odd", "div3",
];
const ADMISSIBLE: &[&str] = &["nat", "fib", "const:1", "const:3", "gauss:2", "gauss:3"];

fn zeta_golden() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(["zeta", "fib", "--levels", "6", "--size", "16"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit status {}", out.status)
    })?;
    let got = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let path = repo_root().join("fixtures/zeta_fib_16_printed.txt");
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if got == want {
        return Ok("16x16 block matches byte for byte".into());
    }
    let labels: Vec<&str> = got
        .lines()
        .next()
        .unwrap_or("")
        .split(' ')
        .skip(2)
        .collect();
    let label = |i: usize| labels.get(i).copied().unwrap_or("?");
    let mut cells = Vec::new();
    for (i, (g, w)) in got.lines().zip(want.lines()).enumerate().skip(1) {
        for (j, (a, b)) in g.split(' ').zip(w.split(' ')).enumerate() {
            if a != b {
                cells.push(format!(
                    "row {} {}, col {j} {}: computed {a}, published {b}",
                    i - 1,
                    label(i - 1),
                    label(j)
                ));
            }
        }
    }
    Err(format!("differs at {}", cells.join("; ")))
}

/// Deepest truncation with at most `cap` vertices.
fn largest_poset(spec: &str, cap: u32) -> CobwebPoset {
    let mut level = 0;
    while CobwebPoset::build(seq(spec), level + 1)
        .unwrap()
        .vertex_count()
        <= BigUint::from(cap)
    {
        level += 1;
    }
    CobwebPoset::build(seq(spec), level).unwrap()
}

fn mobius_inversion() -> Check {
    let mut sizes = Vec::new();
    for spec in BUILTINS {
        let p = largest_poset(spec, 200);
        let zeta = p.zeta_matrix().map_err(|e| e.to_string())?;
        let mu = p.mobius_matrix().map_err(|e| e.to_string())?;
        ensure(zeta.mul(&mu).is_identity(), || {
            format!("{spec}: zeta*mu != I")
        })?;
        ensure(mu.mul(&zeta).is_identity(), || {
            format!("{spec}: mu*zeta != I")
        })?;
        sizes.push(format!("{spec}:{}", zeta.len()));
    }
    Ok(sizes.join(" "))
}

fn chains_are_f_factorials() -> Check {
    let mut largest = BigUint::from(0u32);
    for spec in ["nat", "fib", "const:1", "gauss:2"] {
        let p = CobwebPoset::build(seq(spec), 7).unwrap();
        let table = FNomialTable::new(seq(spec), 7).unwrap();
        for n in 0..=7 {
            let listed = p
                .enumerate_max_chains(0, n, u64::MAX)
                .map_err(|e| e.to_string())?
                .count();
            let want = table.f_factorial(n).unwrap();
            ensure(&BigUint::from(listed) == want, || {
                format!("{spec} n={n}: {listed} != {want}")
            })?;
            largest = largest.max(want.clone());
        }
    }
    Ok(format!("largest enumeration {largest} chains"))
}

const ENUMERATION_CAP: u32 = 200_000;

fn falling_factorials() -> Check {
    let (mut enumerated, mut identities) = (0, 0);
    for spec in ADMISSIBLE {
        let p = CobwebPoset::build(seq(spec), 20).unwrap();
        let t = FNomialTable::new(seq(spec), 20).unwrap();
        for n in 0..=20 {
            for k in 0..=n {
                let m = n - k;
                let falling = t.falling(n, m).unwrap();
                let lhs = t.fnomial(n, k).map_err(|e| e.to_string())? * t.f_factorial(m).unwrap();
                ensure(lhs == falling, || {
                    format!("{spec} n={n} k={k}: fnomial*m_F! != falling")
                })?;
                identities += 1;
                if k == n {
                    continue;
                }
                let count = p.count_max_chains(k + 1, n).unwrap();
                ensure(count == falling, || {
                    format!("{spec} n={n} k={k}: count {count} != {falling}")
                })?;
                if count <= BigUint::from(ENUMERATION_CAP) {
                    let listed = p
                        .enumerate_max_chains(k + 1, n, ENUMERATION_CAP.into())
                        .unwrap()
                        .count();
                    ensure(BigUint::from(listed) == falling, || {
                        format!("{spec} n={n} k={k}: enumerated {listed}")
                    })?;
                    enumerated += 1;
                }
            }
        }
    }
    Ok(format!(
        "{identities} identities, {enumerated} layers enumerated"
    ))
}

fn admissibility() -> Check {
    for spec in [
        "nat", "fib", "gauss:2", "gauss:3", "const:1", "const:2", "const:7",
    ] {
        let v = is_cobweb_admissible(&seq(spec), 20).map_err(|e| e.to_string())?;
        ensure(v.is_admissible(), || {
            format!("{spec} rejected: {:?}", v.first_failure)
        })?;
    }
    let v = is_cobweb_admissible(&seq("list:[2,3,4,5]"), 4).map_err(|e| e.to_string())?;
    let f = v.first_failure.ok_or("list:[2,3,4,5] accepted")?;
    ensure((f.n, f.k) == (2, 1), || {
        format!("first failure at ({}, {})", f.n, f.k)
    })?;
    ensure(f.numer == 3u32.into() && f.denom == 2u32.into(), || {
        format!("fraction {}/{}", f.numer, f.denom)
    })?;
    Ok("list:[2,3,4,5] fails at (2 1) with 3/2".into())
}

fn gcd_morphism() -> Check {
    let fib = is_gcd_morphic(&seq("fib"), 30).map_err(|e| e.to_string())?;
    ensure(fib.is_gcd_morphic(), || {
        format!("fib fails: {:?}", fib.first_failure())
    })?;
    let list = is_gcd_morphic(&seq("list:[2,3,4]"), 3).map_err(|e| e.to_string())?;
    ensure(!list.is_gcd_morphic() && list.fails_at(3, 2), || {
        format!("{:?}", list.failures)
    })?;
    let pairs: Vec<String> = list
        .failures
        .iter()
        .map(|f| format!("({},{})", f.n, f.m))
        .collect();
    Ok(format!("list:[2,3,4] fails at {}", pairs.join(" ")))
}

fn grid_sizes() -> Check {
    for n in 0..=12 {
        for k in 0..=n {
            let brute = common::grid_elements(k, n).len() as u128;
            let formula = ((n - k) * (k + 1) + k * (k + 1) / 2) as u128;
            let size = grid_size(k, n).map_err(|e| e.to_string())?;
            ensure(size == brute && brute == formula, || {
                format!("k={k} n={n}: {size} {brute} {formula}")
            })?;
            let total: u128 = whitney_second_row(k, n).unwrap().iter().sum();
            ensure(total == size, || {
                format!("k={k} n={n}: whitney sum {total}")
            })?;
        }
    }
    Ok("91 grids".into())
}

fn grid_chains() -> Check {
    let diagonal: Vec<usize> = (2..=6)
        .map(|n| common::grid_max_chain_lengths(n, n).len())
        .collect();
    ensure(diagonal == [1, 2, 5, 14, 42], || {
        format!("diagonal {diagonal:?}")
    })?;
    for n in 1..=10 {
        for k in 0..=n {
            let brute = common::grid_max_chain_lengths(k, n).len();
            let closed = grid_max_chains_closed_form(k, n).map_err(|e| e.to_string())?;
            ensure(closed == BigUint::from(brute), || {
                format!("k={k} n={n}: ballot {closed}, brute force {brute}")
            })?;
        }
    }
    let doc = repo_root().join("book/src/layer_grid.md");
    let text = std::fs::read_to_string(&doc).map_err(|e| format!("{}: {e}", doc.display()))?;
    ensure(text.contains("(n + 1 - k)/n"), || {
        "quoted closed form not discussed in the guide".into()
    })?;
    Ok(format!("diagonal {diagonal:?}"))
}

fn fibonacci_numbers(max: usize) -> Vec<BigUint> {
    let mut fib = vec![BigUint::from(0u32), BigUint::from(1u32)];
    while fib.len() <= max {
        let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
        fib.push(next);
    }
    fib
}

/// Fibonomials by `(n k) = F_{n-k+1} (n-1 k-1) + F_{k-1} (n-1 k)`.
fn fibonomials(max: usize) -> Vec<Vec<BigUint>> {
    let fib = fibonacci_numbers(max + 1);
    let mut rows = vec![vec![BigUint::from(1u32)]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::from(1u32)];
        for k in 1..=n {
            let mut v = &fib[n - k + 1] * &prev[k - 1];
            if k < n {
                v += &fib[k - 1] * &prev[k];
            }
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

fn diagonal_poset() -> Check {
    let numbers = fibonacci_numbers(26);
    let nat = seq("nat");
    for n in 0..=25 {
        let b = bell(n, &nat).map_err(|e| e.to_string())?;
        let want = &numbers[n + 1];
        ensure(&b == want, || {
            format!("B_{n}(nat) = {b}, Fib({}) = {want}", n + 1)
        })?;
    }
    let fibs = fibonomials(15);
    let fib = seq("fib");
    for n in 0..=15 {
        for k in 0..=n {
            let w = whitney(n, k, &fib).map_err(|e| e.to_string())?;
            let want = if 2 * k <= n {
                fibs[n - k][k].clone()
            } else {
                BigUint::from(0u32)
            };
            ensure(w == want, || format!("fib n={n} k={k}: {w} != {want}"))?;
        }
    }
    Ok("nat n<=25, fib n<=15".into())
}

#[derive(serde::Deserialize)]
struct Stamp {
    partitions: u64,
}

fn tiling() -> Check {
    let mut required: Vec<(&str, usize, usize)> = (1..=6)
        .flat_map(|n| (0..n).map(move |k| ("const:1", k, n)))
        .collect();
    required.extend([("nat", 1, 2), ("nat", 1, 3), ("fib", 1, 4)]);
    let mut slowest = Duration::ZERO;
    for (spec, k, n) in &required {
        let start = Instant::now();
        let inst = TilingInstance::build(
            seq(spec),
            *k,
            *n,
            SigmaPolicy::All,
            &TilingBudget::default(),
        )
        .map_err(|e| e.to_string())?;
        let serial = inst.exists_partition(&canonical_options(1, None));
        let parallel = inst.exists_partition(&canonical_options(4, None));
        ensure(serial == parallel, || {
            format!("{spec} {k} {n}: serial {serial:?}, parallel {parallel:?}")
        })?;
        let TilingVerdict::Yes(witness) = &serial else {
            return Err(format!("{spec} {k} {n}: {}", serial.label()));
        };
        ensure(inst.verify_partition(witness).unwrap(), || {
            format!("{spec} {k} {n}: witness rejected")
        })?;
        for jobs in [1, 4] {
            let opts = SearchOptions {
                jobs,
                ..SearchOptions::default()
            };
            if let TilingVerdict::Yes(w) = inst.exists_partition(&opts) {
                ensure(inst.verify_partition(&w).unwrap(), || {
                    format!("{spec} {k} {n}: witness rejected")
                })?;
            }
        }
        let count_1 = inst.count_partitions(u64::MAX, &SearchOptions::default());
        let count_4 = inst.count_partitions(
            u64::MAX,
            &SearchOptions {
                jobs: 4,
                ..SearchOptions::default()
            },
        );
        ensure(count_1 == count_4, || {
            format!("{spec} {k} {n}: counts {count_1:?} vs {count_4:?}")
        })?;
        let name = format!("{}_{k}_{n}_all.json", spec.replace(':', "-"));
        let path = repo_root().join("fixtures/tiling").join(name);
        let stamp: Stamp = serde_json::from_str(
            &std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?,
        )
        .map_err(|e| e.to_string())?;
        ensure(
            count_1 == cobweb::exact_cover::CoverCount::Exact(stamp.partitions),
            || {
                format!(
                    "{spec} {k} {n}: count {count_1:?}, fixture {}",
                    stamp.partitions
                )
            },
        )?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(60), || {
            format!("{spec} {k} {n} took {elapsed:?}")
        })?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!(
        "{} instances, slowest {slowest:.2?}",
        required.len()
    ))
}

fn dobinski() -> Check {
    let mut worst: f64 = 0.0;
    for n in 0..=15 {
        let approx = bell_dobinski(n, 1e-9).map_err(|e| e.to_string())?;
        let exact: f64 = bell_exact(n).to_string().parse().unwrap();
        let rel = (approx.value - exact).abs() / exact;
        ensure(rel <= 1e-9, || format!("n={n}: relative error {rel:e}"))?;
        worst = worst.max(rel);
    }
    Ok(format!("worst relative error {worst:e}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "zeta matrix golden file",
            Duration::from_secs(1),
            zeta_golden,
        ),
        (
            "mobius inversion",
            Duration::from_secs(10),
            mobius_inversion,
        ),
        (
            "chains from the root",
            Duration::from_secs(30),
            chains_are_f_factorials,
        ),
        (
            "layer chains and falling factorials",
            Duration::from_secs(5),
            falling_factorials,
        ),
        ("cobweb admissibility", Duration::MAX, admissibility),
        ("gcd morphism", Duration::MAX, gcd_morphism),
        ("layer grid sizes", Duration::MAX, grid_sizes),
        ("layer grid chains", Duration::from_secs(10), grid_chains),
        ("diagonal poset", Duration::MAX, diagonal_poset),
        ("tiling", Duration::MAX, tiling),
        ("dobinski series", Duration::from_secs(1), dobinski),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        let (mark, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {mark} [{elapsed:>9.2?}] {name}: {detail}",
            i + 1
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
