//! Floating-point accumulation with optional Neumaier compensation.

/// Running sum that optionally carries a compensation term for the rounding
/// error of every addition (Neumaier's variant of Kahan summation, which
/// stays correct when an addend exceeds the running sum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
    compensated: bool,
}

impl Default for Accumulator {
    fn default() -> Self {
        Self::new(true)
    }
}

impl Accumulator {
    pub fn new(compensated: bool) -> Self {
        Self {
            sum: 0.0,
            comp: 0.0,
            compensated,
        }
    }

    #[inline]
    pub fn add(&mut self, term: f64) {
        if !self.compensated {
            self.sum += term;
            return;
        }
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &Accumulator) {
        self.add(other.sum);
        if self.compensated {
            self.add(other.comp);
        }
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn is_compensated(&self) -> bool {
        self.compensated
    }
}

impl Extend<f64> for Accumulator {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for t in iter {
            self.add(t);
        }
    }
}
