//! Linear algebra over the prime field `F_p`, entries stored as `u64 < p`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: Vec<Vec<u64>>,
    cols: usize,
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl FpMatrix {
    pub fn new(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> FpMatrix {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        FpMatrix { p, rows, cols }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, piv);
            let inv = inv_mod_p(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let factor = m[i][c];
                    for j in 0..self.cols {
                        m[i][j] = (m[i][j] + p * p - factor * m[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (FpMatrix { p, rows: m, cols: self.cols }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (row, &pc) in r.rows.iter().zip(&pivots) {
                    v[pc] = (self.p - row[fc]) % self.p;
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows.len());
        let aug = FpMatrix::new(
            self.p,
            self.cols + 1,
            self.rows
                .iter()
                .zip(b)
                .map(|(r, &x)| {
                    let mut r = r.clone();
                    r.push(x);
                    r
                })
                .collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (row, &pc) in r.rows.iter().zip(&pivots) {
            x[pc] = row[self.cols];
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a * b) % self.p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = FpMatrix::new(3, 3, vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        // row 2 = 2 * row 1 mod 3
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), vec![0, 0, 0]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = FpMatrix::new(2, 2, vec![vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[1, 0]).is_none());
        let x = m.solve(&[1, 1]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 1]);
    }
}
