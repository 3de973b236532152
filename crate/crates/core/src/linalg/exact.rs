//! Exact elimination over cyclotomic fields.
//!
//! Rank of rational matrices goes through a fraction-free integer elimination
//! (first on `i64` with overflow checks, then on big integers). Everything
//! else uses reduced row echelon form over the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::Cyclotomic;

/// Rank of a matrix given by rows.
pub fn rank(rows: &[Vec<Cyclotomic>]) -> usize {
    if let Some(int_rows) = integer_rows(rows) {
        if let Some(r) = small_rows(&int_rows).and_then(rank_i64) {
            return r;
        }
        return rank_bigint(int_rows);
    }
    rref(rows.to_vec()).1.len()
}

/// Scale each row of a rational matrix to a primitive integer row.
fn integer_rows(rows: &[Vec<Cyclotomic>]) -> Option<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|row| {
            let rats = row.iter().map(Cyclotomic::rational_part).collect::<Option<Vec<_>>>()?;
            let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            Some(
                rats.iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect(),
            )
        })
        .collect()
}

fn small_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter()
        .map(|row| row.iter().map(ToPrimitive::to_i64).collect())
        .collect()
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Pick the active row with a nonzero in column `c` and the fewest nonzeros overall.
fn choose_pivot<T>(rows: &[Vec<T>], active: &[usize], c: usize, is_zero: impl Fn(&T) -> bool) -> Option<usize> {
    active
        .iter()
        .copied()
        .filter(|&r| !is_zero(&rows[r][c]))
        .min_by_key(|&r| (rows[r].iter().filter(|x| !is_zero(x)).count(), r))
}

fn rank_i64(mut rows: Vec<Vec<i64>>) -> Option<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = choose_pivot(&rows, &active, c, |x| *x == 0) else {
            continue;
        };
        active.retain(|&r| r != p);
        rank += 1;
        let pivot = rows[p].clone();
        let pc = pivot[c];
        for &r in &active {
            let a = rows[r][c];
            if a == 0 {
                continue;
            }
            let g = gcd_i64(pc, a);
            let (mp, ma) = (pc / g, a / g);
            let mut content = 0i64;
            for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                *x = x.checked_mul(mp)?.checked_sub(y.checked_mul(ma)?)?;
                content = gcd_i64(content, *x);
            }
            if content > 1 {
                rows[r].iter_mut().for_each(|x| *x /= content);
            }
        }
        if active.is_empty() {
            break;
        }
    }
    Some(rank)
}

fn rank_bigint(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = choose_pivot(&rows, &active, c, Zero::is_zero) else {
            continue;
        };
        active.retain(|&r| r != p);
        rank += 1;
        let pivot = rows[p].clone();
        let pc = &pivot[c];
        for &r in &active {
            if rows[r][c].is_zero() {
                continue;
            }
            let g = pc.gcd(&rows[r][c]);
            let mp = pc / &g;
            let ma = &rows[r][c] / &g;
            let mut content = BigInt::zero();
            for (x, y) in rows[r].iter_mut().zip(&pivot) {
                *x = &*x * &mp - y * &ma;
                content = content.gcd(x);
            }
            if content > BigInt::one() {
                rows[r].iter_mut().for_each(|x| *x /= &content);
            }
        }
        if active.is_empty() {
            break;
        }
    }
    rank
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(mut a: Vec<Vec<Cyclotomic>>) -> (Vec<Vec<Cyclotomic>>, Vec<usize>) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..n {
        if pr >= m {
            break;
        }
        let Some(found) = (pr..m).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pr, found);
        let inv = a[pr][c].inv().expect("pivot is nonzero");
        for x in a[pr].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv).simplify();
            }
        }
        let pivot = a[pr].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x = x.sub(&factor.mul(y)).simplify();
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    (a, pivots)
}

/// Basis of the right null space, each vector scaled so its first nonzero entry is 1.
pub fn kernel(rows: &[Vec<Cyclotomic>], ncols: usize) -> Vec<Vec<Cyclotomic>> {
    let (a, pivots) = rref(rows.to_vec());
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|fc| {
        let mut v = vec![Cyclotomic::zero(); ncols];
        v[fc] = Cyclotomic::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][fc].neg();
        }
        normalize_first(v)
    })
    .collect()
}

/// Divide a nonzero vector by its first nonzero entry.
pub fn normalize_first(v: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    match v.iter().find(|x| !x.is_zero()).and_then(Cyclotomic::inv) {
        Some(inv) => v.iter().map(|x| x.mul(&inv).simplify()).collect(),
        None => v,
    }
}

/// Outcome of an exact solve.
pub enum Solve {
    Solution(Vec<Cyclotomic>),
    /// Inconsistent system; carries the largest residual magnitude of the best partial solution.
    Inconsistent(f64),
}

/// One solution of `A x = b`.
pub fn solve(rows: &[Vec<Cyclotomic>], b: &[Cyclotomic], ncols: usize) -> Solve {
    let aug: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    let mut x = vec![Cyclotomic::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        if pc < ncols {
            x[pc] = red[r][ncols].clone();
        }
    }
    if pivots.last() == Some(&ncols) {
        let residual = rows
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let ax = row.iter().zip(&x).fold(Cyclotomic::zero(), |acc, (a, xi)| acc.add(&a.mul(xi)));
                ax.sub(bi).to_complex().norm()
            })
            .fold(0.0, f64::max);
        return Solve::Inconsistent(residual);
    }
    Solve::Solution(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Cyclotomic>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Cyclotomic::from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn integer_paths_agree() {
        let m = ints(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let big: Vec<Vec<BigInt>> = integer_rows(&m).unwrap();
        assert_eq!(rank_bigint(big), 2);
        // Entries large enough to overflow the fast path.
        let huge = ints(&[&[i64::MAX / 3, 1], &[1, i64::MAX / 5]]);
        assert_eq!(rank(&huge), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let m = ints(&[&[1, 1, 0], &[0, 0, 0]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![Cyclotomic::one(), Cyclotomic::from_i64(-1), Cyclotomic::zero()]);
        let b = vec![Cyclotomic::from_i64(3), Cyclotomic::zero()];
        match solve(&m, &b, 3) {
            Solve::Solution(x) => assert_eq!(x[0].add(&x[1]), Cyclotomic::from_i64(3)),
            Solve::Inconsistent(_) => panic!("consistent system"),
        }
        let bad = vec![Cyclotomic::zero(), Cyclotomic::one()];
        assert!(matches!(solve(&m, &bad, 3), Solve::Inconsistent(r) if r > 0.5));
    }

    #[test]
    fn complex_entries_use_field_elimination() {
        let i = Cyclotomic::root_of_unity(4, 1);
        let m = vec![
            vec![Cyclotomic::one(), i.clone()],
            vec![i.clone(), Cyclotomic::from_i64(-1)],
        ];
        assert_eq!(rank(&m), 1);
    }
}
