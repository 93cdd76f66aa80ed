//! Log-factorials, compensated summation and terminating ₂F₁.

/// ln(k!) for k = 0..=n.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// ₂F₁(a, −k; c; z) for a non-negative integer k, summed exactly as the
/// k+1 term polynomial with the term ratio (a+j)(j−k)z / ((c+j)(j+1)).
pub fn hyp2f1_terminating(a: f64, k: usize, c: f64, z: f64) -> f64 {
    let b = -(k as f64);
    let mut term = 1.0;
    let mut sum = CompensatedSum::default();
    sum.add(term);
    for j in 0..k {
        let j = j as f64;
        term *= (a + j) * (b + j) * z / ((c + j) * (j + 1.0));
        sum.add(term);
    }
    sum.value()
}
