use cobweb::diagonal::{bell, bell_sequence, whitney, whitney_triangle, DiagonalPoset};
use cobweb::{AdmissibleSequence, FNomialTable};
use num_bigint::BigUint;
use num_traits::Zero;

fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::from(1u32));
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Fibonomials via `(n k) = F_{n-k+1} (n-1 k-1) + F_{k-1} (n-1 k)`.
fn fibonomial_triangle(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::from(1u32)];
        for k in 1..=n {
            let left = fibonacci(n - k + 1) * &prev[k - 1];
            let right = if k < n {
                fibonacci(k - 1) * &prev[k]
            } else {
                BigUint::zero()
            };
            row.push(left + right);
        }
        rows.push(row);
    }
    rows
}

#[test]
fn natural_bell_numbers_are_fibonacci() {
    let nat = AdmissibleSequence::nat();
    for n in 0..=25 {
        assert_eq!(bell(n, &nat).unwrap(), fibonacci(n + 1), "n={n}");
    }
    let seq = bell_sequence(&nat, 25).unwrap();
    assert_eq!(seq, (0..=25).map(|n| fibonacci(n + 1)).collect::<Vec<_>>());
}

#[test]
fn fibonacci_whitney_numbers_match_recurrence() {
    let fib = AdmissibleSequence::fib();
    let oracle = fibonomial_triangle(15);
    for n in 0..=15 {
        for k in 0..=n {
            let expected = if 2 * k <= n {
                oracle[n - k][k].clone()
            } else {
                BigUint::zero()
            };
            assert_eq!(whitney(n, k, &fib).unwrap(), expected, "n={n} k={k}");
        }
    }
}

#[test]
fn whitney_numbers_are_shifted_fnomials() {
    for spec in ["nat", "fib", "gauss:2", "const:5"] {
        let seq: AdmissibleSequence = spec.parse().unwrap();
        let table = FNomialTable::new(seq.clone(), 20).unwrap();
        let triangle = whitney_triangle(&seq, 20).unwrap();
        for n in 0..=20 {
            let poset = DiagonalPoset::new(seq.clone(), n).unwrap();
            let mut total = BigUint::zero();
            for k in poset.ranks() {
                let w = poset.whitney(k).unwrap();
                assert_eq!(w, table.fnomial(n - k, k).unwrap(), "{spec} n={n} k={k}");
                assert_eq!(triangle[n][k], w);
                total += w;
            }
            assert_eq!(poset.bell().unwrap(), total);
        }
    }
}
