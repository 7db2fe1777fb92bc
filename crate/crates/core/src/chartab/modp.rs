//! Linear algebra over a prime field `F_l` with `l < 2^32`.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub l: u64,
}

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.l));
        self.pow(a, self.l - 2)
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let n = self.l - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.l).find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1)).unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{v : A v = 0}` for a square matrix `A` (rows of `a`).
    pub fn nullspace(self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.first().map_or(0, |r| r.len());
        let mut m = a.to_vec();
        let pivots = self.rref(&mut m);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (row, &pc) in m.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - A)`, constant term first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if p != j + 1 {
                h.swap(p, j + 1);
                for row in h.iter_mut() {
                    row.swap(p, j + 1);
                }
            }
            let inv = self.inv(h[j + 1][j]);
            for k in j + 2..n {
                if h[k][j] == 0 {
                    continue;
                }
                let t = self.mul(h[k][j], inv);
                for c in 0..n {
                    let s = self.mul(t, h[j + 1][c]);
                    h[k][c] = self.sub(h[k][c], s);
                }
                for row in h.iter_mut() {
                    let s = self.mul(t, row[k]);
                    row[j + 1] = self.add(row[j + 1], s);
                }
            }
        }
        // p_0 = 1, p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{k=i+1}^m h_{k,k-1}) p_i
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let pm = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (d, &c) in pm.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[m][m], c));
            }
            let mut prod = 1u64;
            for i in (0..m).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(h[i][m], prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    crate::gfmat::is_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = Fp { l: 101 };
        // [[2,1],[1,2]] has char poly x^2 - 4x + 3
        let a = vec![vec![2, 1], vec![1, 2]];
        assert_eq!(f.charpoly(&a), vec![3, 97, 1]);
        let b = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        // permutation matrix of a 3-cycle: x^3 - 1
        assert_eq!(f.charpoly(&b), vec![100, 0, 0, 1]);
        let roots: Vec<u64> = (0..101).filter(|&x| f.eval(&f.charpoly(&a), x) == 0).collect();
        assert_eq!(roots, vec![1, 3]);
    }

    #[test]
    fn nullspace_and_roots() {
        let f = Fp { l: 31 };
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]];
        let ns = f.nullspace(&a);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for row in &a {
            let s = row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            assert_eq!(s, 0);
        }
        assert_eq!(f.primitive_root(), 3);
        assert_eq!(f.mul(f.inv(7), 7), 1);
    }
}
