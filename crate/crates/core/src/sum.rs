//! Compensated floating-point accumulation.
//!
//! Every reported sum in this crate is accumulated in a fixed order with
//! Neumaier's variant of Kahan summation, so results are reproducible
//! bit-for-bit regardless of thread count.

/// Running Neumaier sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merge another partial sum, keeping both compensation terms.
    #[inline]
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

/// Sum an iterator in order with compensation.
pub fn ordered_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Block size used by [`par_map_sum`]. Fixed so that the reduction tree does
/// not depend on the number of worker threads.
pub const PAR_BLOCK: usize = 4096;

/// Map `f` over `items` in parallel and sum the results deterministically.
///
/// Items are split into fixed blocks of [`PAR_BLOCK`]; each block is summed
/// in order and the block partials are merged left to right.
pub fn par_map_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    use rayon::prelude::*;

    let partials: Vec<CompensatedSum> = items
        .par_chunks(PAR_BLOCK)
        .map(|chunk| chunk.iter().map(&f).collect())
        .collect();
    let mut total = CompensatedSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}
