//! Symmetric banded matrix with an in-place LDLᵀ solve.

#[derive(Debug, Clone)]
pub(crate) struct BandedSym {
    n: usize,
    bw: usize,
    // row i stores columns i-bw ..= i, diagonal last
    data: Vec<f64>,
}

impl BandedSym {
    pub fn zeros(n: usize, bw: usize) -> Self {
        Self {
            n,
            bw,
            data: vec![0.0; n * (bw + 1)],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && i - j <= self.bw);
        i * (self.bw + 1) + (self.bw - (i - j))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if i - j > self.bw {
            return 0.0;
        }
        self.data[self.idx(i, j)]
    }

    /// Adds to the lower-triangle entry; callers add each symmetric pair once.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// Replaces row/column `i` by the identity.
    pub fn pin(&mut self, i: usize) {
        let lo = i.saturating_sub(self.bw);
        let hi = (i + self.bw).min(self.n - 1);
        for j in lo..=hi {
            if j != i {
                let (a, b) = if i >= j { (i, j) } else { (j, i) };
                let k = self.idx(a, b);
                self.data[k] = 0.0;
            }
        }
        let k = self.idx(i, i);
        self.data[k] = 1.0;
    }

    /// Factors in place and solves `A x = rhs`, overwriting `rhs`.
    /// Returns the equation index of a zero pivot on failure.
    pub fn factor_solve(&mut self, rhs: &mut [f64]) -> Result<(), usize> {
        self.factor()?;
        self.solve_factored(rhs);
        Ok(())
    }

    /// In-place LDLᵀ factorization. Returns the number of negative pivots,
    /// which equals the number of negative eigenvalues.
    pub fn factor(&mut self) -> Result<usize, usize> {
        let (n, bw) = (self.n, self.bw);
        let mut negative = 0;
        for j in 0..n {
            let j0 = j.saturating_sub(bw);
            let mut d = self.data[self.idx(j, j)];
            for k in j0..j {
                let l = self.data[self.idx(j, k)];
                d -= l * l * self.data[self.idx(k, k)];
            }
            if d == 0.0 || !d.is_finite() {
                return Err(j);
            }
            if d < 0.0 {
                negative += 1;
            }
            let dj = self.idx(j, j);
            self.data[dj] = d;
            for i in (j + 1)..=(j + bw).min(n - 1) {
                let i0 = i.saturating_sub(bw);
                let mut s = self.data[self.idx(i, j)];
                for k in i0.max(j0)..j {
                    s -= self.data[self.idx(i, k)] * self.data[self.idx(j, k)] * self.data[self.idx(k, k)];
                }
                let ij = self.idx(i, j);
                self.data[ij] = s / d;
            }
        }
        Ok(negative)
    }

    pub fn solve_factored(&self, rhs: &mut [f64]) {
        let (n, bw) = (self.n, self.bw);
        for i in 0..n {
            let i0 = i.saturating_sub(bw);
            let mut s = rhs[i];
            for k in i0..i {
                s -= self.data[self.idx(i, k)] * rhs[k];
            }
            rhs[i] = s;
        }
        for (i, r) in rhs.iter_mut().enumerate() {
            *r /= self.data[self.idx(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = rhs[i];
            for k in (i + 1)..=(i + bw).min(n - 1) {
                s -= self.data[self.idx(k, i)] * rhs[k];
            }
            rhs[i] = s;
        }
    }
}
