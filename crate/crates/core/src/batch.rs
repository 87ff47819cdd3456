//! Scanning many sources at once.
//!
//! [`scan_batch`] uses rayon when the `parallel` feature is on and the
//! sequential loop otherwise. Both paths return results in input order and
//! produce identical output; [`scan_batch_sequential`] is always available
//! for comparison.

use crate::metrics::{compute_metrics, MetricsError, QualityMetrics};
use crate::scanner::{scan_bytes, ScanError, SourceStats};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct SourceInput {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl SourceInput {
    pub fn new(name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        SourceInput { name: name.into(), bytes: bytes.into() }
    }
}

pub fn scan_batch_sequential(inputs: &[SourceInput]) -> Vec<Result<SourceStats, ScanError>> {
    inputs.iter().map(|i| scan_bytes(&i.bytes, &i.name)).collect()
}

#[cfg(feature = "parallel")]
pub fn scan_batch_parallel(inputs: &[SourceInput]) -> Vec<Result<SourceStats, ScanError>> {
    inputs.par_iter().map(|i| scan_bytes(&i.bytes, &i.name)).collect()
}

pub fn scan_batch(inputs: &[SourceInput]) -> Vec<Result<SourceStats, ScanError>> {
    #[cfg(feature = "parallel")]
    {
        scan_batch_parallel(inputs)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_batch_sequential(inputs)
    }
}

/// [`compute_metrics`] over `(errors, loc)` pairs.
pub fn metrics_batch(pairs: &[(u64, u64)]) -> Vec<Result<QualityMetrics, MetricsError>> {
    #[cfg(feature = "parallel")]
    {
        pairs.par_iter().map(|&(e, l)| compute_metrics(e, l)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs.iter().map(|&(e, l)| compute_metrics(e, l)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_preserves_order_and_errors() {
        let inputs = vec![
            SourceInput::new("a.c", "int a;\n// c\n"),
            SourceInput::new("bad.c", vec![b'x', 0xff]),
            SourceInput::new("b.c", "for(;;);\n"),
        ];
        let out = scan_batch(&inputs);
        assert_eq!(out.len(), 3);
        assert_eq!(out[0].as_ref().unwrap().file_name, "a.c");
        assert_eq!(out[1], Err(ScanError::Encoding { offset: 1 }));
        assert_eq!(out[2].as_ref().unwrap().for_count, 1);
        assert_eq!(out, scan_batch_sequential(&inputs));
    }

    #[test]
    fn metrics_batch_matches_scalar() {
        let pairs = [(8, 944), (0, 608), (1, 0)];
        let out = metrics_batch(&pairs);
        for (&(e, l), got) in pairs.iter().zip(out) {
            assert_eq!(got, compute_metrics(e, l));
        }
    }
}
