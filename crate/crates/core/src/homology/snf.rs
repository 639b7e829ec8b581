use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Non-zero diagonal entries `d_1 | d_2 | ... | d_k`, all positive.
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Free rank of the cokernel `Z^cols / rowspace`.
    pub fn cokernel_rank(&self) -> usize {
        self.cols - self.rank()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form by repeated pivoting on the entry of least absolute
/// value. Rows and columns are treated symmetrically, so the factors of the
/// transpose are the same.
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut factors = Vec::new();

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_nonzero(&m, t) else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    let v = &m[i][t] * &q;
                    m[i][j] -= v;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the pivot
            let (pr, pc) = smallest_in_cross(&m, t);
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    SmithForm {
        rows,
        cols,
        factors,
    }
}

fn smallest_nonzero(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(m: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..m.len() {
        let x = &m[i][t];
        if !x.is_zero() && (m[best.0][best.1].is_zero() || x.abs() < m[best.0][best.1].abs()) {
            best = (i, t);
        }
    }
    for j in t..m[t].len() {
        let x = &m[t][j];
        if !x.is_zero() && (m[best.0][best.1].is_zero() || x.abs() < m[best.0][best.1].abs()) {
            best = (t, j);
        }
    }
    best
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn identity() {
        let f = smith_normal_form(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(f.cokernel_rank(), 0);
        assert!(f.torsion().is_empty());
    }

    #[test]
    fn two_by_two() {
        let f = smith_normal_form(&big(&[&[2, 4], &[-2, 6]]));
        assert_eq!(f.factors, vec![BigInt::from(2), BigInt::from(10)]);
    }

    #[test]
    fn zero_matrix() {
        let f = smith_normal_form(&big(&[&[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(f.cokernel_rank(), 3);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2,3) ~ diag(1,6)
        let f = smith_normal_form(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(f.factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn bareiss() {
        assert_eq!(determinant(&big(&[&[2, 4], &[-2, 6]])), BigInt::from(20));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }
}
