//! Validation indices and the lower-bound-error series.
//!
//! Two families of indices are computed over a sample window: the
//! classical RMSE/MAPE, and LRMSE/LMAPE, which widen each prediction by
//! the per-sample lower bound error δ before measuring the residual, so
//! that simulation rounding already provably present in the prediction
//! cannot make an index look better than the data supports.
//!
//! All sums are accumulated in ascending sample order starting from 0.0,
//! and every arithmetic step is a single binary64 operation, so results
//! are bitwise reproducible.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::sim::Orbit;

/// Metric-level failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    /// Paired sequences must have identical lengths.
    LengthMismatch { left: usize, right: usize },
    /// LRMSE/LMAPE need a δ series.
    MissingDelta,
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::LengthMismatch { left, right } => {
                write!(f, "sequence lengths differ: {left} vs {right}")
            }
            MetricsError::MissingDelta => {
                f.write_str("this index requires a lower-bound-error series")
            }
        }
    }
}

impl core::error::Error for MetricsError {}

/// The per-sample lower bound error of a pair of orbits:
/// δ_n = |a_n − b_n| / 2 (one subtraction, one absolute value, one exact
/// halving).
#[derive(Debug, Clone, PartialEq)]
pub struct LbeSeries {
    delta: Vec<f64>,
}

impl LbeSeries {
    /// The δ values, index-aligned with the orbit samples.
    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    /// Number of entries (orbit length).
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    /// True when the series has no entries.
    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// δ_n, if n is in range.
    pub fn get(&self, n: usize) -> Option<f64> {
        self.delta.get(n).copied()
    }

    /// The first index with δ > 0: where the two orbits first disagree.
    pub fn first_positive(&self) -> Option<usize> {
        self.delta.iter().position(|&d| d > 0.0)
    }
}

/// Computes the lower-bound-error series of two equal-length orbits.
pub fn lbe(a: &Orbit, b: &Orbit) -> Result<LbeSeries, MetricsError> {
    if a.len() != b.len() {
        return Err(MetricsError::LengthMismatch { left: a.len(), right: b.len() });
    }
    let delta = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| math::abs(x - y) / 2.0)
        .collect();
    Ok(LbeSeries { delta })
}

fn check_lengths(y: &[f64], yhat: &[f64]) -> Result<(), MetricsError> {
    if y.len() != yhat.len() {
        return Err(MetricsError::LengthMismatch { left: y.len(), right: yhat.len() });
    }
    Ok(())
}

fn window_mean(y: &[f64]) -> f64 {
    let mut sum = 0.0;
    for &v in y {
        sum += v;
    }
    sum / y.len() as f64
}

fn centered_energy(y: &[f64], mean: f64) -> f64 {
    let mut sum = 0.0;
    for &v in y {
        let d = v - mean;
        sum += d * d;
    }
    sum
}

/// Normalized RMSE over a window: √Σ(y−ŷ)² / √Σ(y−ȳ)² with ȳ the window
/// mean of y. Returns `None` when the denominator is exactly zero
/// (constant y window or empty window) — undefined, never NaN.
pub fn rmse(y: &[f64], yhat: &[f64]) -> Result<Option<f64>, MetricsError> {
    check_lengths(y, yhat)?;
    if y.is_empty() {
        return Ok(None);
    }
    let mean = window_mean(y);
    let mut num = 0.0;
    for k in 0..y.len() {
        let r = y[k] - yhat[k];
        num += r * r;
    }
    let den = centered_energy(y, mean);
    if den == 0.0 {
        Ok(None)
    } else {
        Ok(Some(math::sqrt(num) / math::sqrt(den)))
    }
}

/// A MAPE-family result: the index (undefined when every sample was
/// skipped) plus how many window samples were dropped because y(k) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mape {
    pub value: Option<f64>,
    pub skipped: usize,
}

/// Mean absolute percentage error over a window:
/// (1/M)·Σ|(ŷ(k)−y(k))/y(k)| over the samples with y(k) ≠ 0, where M is
/// the count of included samples. Skipped samples are counted, never
/// silent.
pub fn mape(y: &[f64], yhat: &[f64]) -> Result<Mape, MetricsError> {
    check_lengths(y, yhat)?;
    let mut sum = 0.0;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for k in 0..y.len() {
        if y[k] != 0.0 {
            sum += math::abs((yhat[k] - y[k]) / y[k]);
            used += 1;
        } else {
            skipped += 1;
        }
    }
    if used == 0 {
        Ok(Mape { value: None, skipped })
    } else {
        Ok(Mape { value: Some(sum / used as f64), skipped })
    }
}

/// The δ-widened residual y(k) − ŷ(k)·(1∓δ_k): predictions below the
/// reference are shrunk further (1−δ), predictions above are grown
/// (1+δ), so an error bound already present in the simulation cannot
/// shrink the residual. At ŷ(k) = y(k) both branches have the same
/// magnitude |δ·ŷ|; the (1+δ) branch is taken.
fn widened_residual(y: f64, yhat: f64, delta: f64) -> f64 {
    if yhat < y {
        y - yhat * (1.0 - delta)
    } else {
        y - yhat * (1.0 + delta)
    }
}

/// LRMSE: identical ratio structure to [`rmse`], with each numerator
/// residual replaced by the δ-widened residual.
pub fn lrmse(y: &[f64], yhat: &[f64], delta: &[f64]) -> Result<Option<f64>, MetricsError> {
    check_lengths(y, yhat)?;
    if y.len() != delta.len() {
        return Err(MetricsError::LengthMismatch { left: y.len(), right: delta.len() });
    }
    if y.is_empty() {
        return Ok(None);
    }
    let mean = window_mean(y);
    let mut num = 0.0;
    for k in 0..y.len() {
        let r = widened_residual(y[k], yhat[k], delta[k]);
        num += r * r;
    }
    let den = centered_energy(y, mean);
    if den == 0.0 {
        Ok(None)
    } else {
        Ok(Some(math::sqrt(num) / math::sqrt(den)))
    }
}

/// LMAPE: [`mape`] with ŷ(k) replaced by ŷ(k)·(1∓δ_k) under the same
/// per-sample branch rule; zero-denominator samples are skipped
/// identically.
pub fn lmape(y: &[f64], yhat: &[f64], delta: &[f64]) -> Result<Mape, MetricsError> {
    check_lengths(y, yhat)?;
    if y.len() != delta.len() {
        return Err(MetricsError::LengthMismatch { left: y.len(), right: delta.len() });
    }
    let mut sum = 0.0;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for k in 0..y.len() {
        if y[k] != 0.0 {
            if yhat[k] < y[k] {
                sum += math::abs((yhat[k] * (1.0 - delta[k]) - y[k]) / y[k]);
            } else {
                sum += math::abs((yhat[k] * (1.0 + delta[k]) - y[k]) / y[k]);
            }
            used += 1;
        } else {
            skipped += 1;
        }
    }
    if used == 0 {
        Ok(Mape { value: None, skipped })
    } else {
        Ok(Mape { value: Some(sum / used as f64), skipped })
    }
}

/// Which index a running series carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Rmse,
    Lrmse,
    Mape,
    Lmape,
}

impl IndexKind {
    /// Display name ("RMSE", "LRMSE", "MAPE", "LMAPE").
    pub fn name(&self) -> &'static str {
        match self {
            IndexKind::Rmse => "RMSE",
            IndexKind::Lrmse => "LRMSE",
            IndexKind::Mape => "MAPE",
            IndexKind::Lmape => "LMAPE",
        }
    }

    fn needs_delta(&self) -> bool {
        matches!(self, IndexKind::Lrmse | IndexKind::Lmape)
    }
}

/// A per-iteration index series: entry n is the index over the window
/// k = k_start..=n, recomputed from scratch for each n so that every
/// entry is exactly the scalar metric of its window (O(N²) overall —
/// accepted for the run lengths involved). Entries before k_start, and
/// entries whose window is degenerate (constant y, or all samples
/// skipped), are absent rather than zero.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSeries {
    kind: IndexKind,
    k_start: usize,
    values: Vec<Option<f64>>,
    skipped_samples: Vec<usize>,
}

impl IndexSeries {
    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn k_start(&self) -> usize {
        self.k_start
    }

    /// One entry per orbit sample; `None` where the index is undefined.
    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    /// The entry at n (`None` when out of range or undefined).
    pub fn value_at(&self, n: usize) -> Option<f64> {
        self.values.get(n).copied().flatten()
    }

    /// Count of zero-denominator samples dropped from the window ending
    /// at each n (always 0 for the RMSE family).
    pub fn skipped_samples(&self) -> &[usize] {
        &self.skipped_samples
    }

    /// Skipped-sample count for the window ending at n.
    pub fn skipped_at(&self, n: usize) -> usize {
        self.skipped_samples.get(n).copied().unwrap_or(0)
    }

    /// Number of entries (orbit length).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the series has no entries.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The entry at the final sample.
    pub fn final_value(&self) -> Option<f64> {
        self.values.last().copied().flatten()
    }
}

/// Builds the running series of one index. `delta` is required for the
/// LRMSE/LMAPE kinds and ignored otherwise.
pub fn running_index(
    kind: IndexKind,
    y: &[f64],
    yhat: &[f64],
    delta: Option<&[f64]>,
    k_start: usize,
) -> Result<IndexSeries, MetricsError> {
    check_lengths(y, yhat)?;
    let delta = if kind.needs_delta() {
        let d = delta.ok_or(MetricsError::MissingDelta)?;
        if d.len() != y.len() {
            return Err(MetricsError::LengthMismatch { left: y.len(), right: d.len() });
        }
        Some(d)
    } else {
        None
    };

    let mut values = Vec::with_capacity(y.len());
    let mut skipped_samples = Vec::with_capacity(y.len());
    for n in 0..y.len() {
        if n < k_start {
            values.push(None);
            skipped_samples.push(0);
            continue;
        }
        let yw = &y[k_start..=n];
        let yhw = &yhat[k_start..=n];
        match kind {
            IndexKind::Rmse => {
                values.push(rmse(yw, yhw)?);
                skipped_samples.push(0);
            }
            IndexKind::Lrmse => {
                let dw = &delta.unwrap()[k_start..=n];
                values.push(lrmse(yw, yhw, dw)?);
                skipped_samples.push(0);
            }
            IndexKind::Mape => {
                let m = mape(yw, yhw)?;
                values.push(m.value);
                skipped_samples.push(m.skipped);
            }
            IndexKind::Lmape => {
                let dw = &delta.unwrap()[k_start..=n];
                let m = lmape(yw, yhw, dw)?;
                values.push(m.value);
                skipped_samples.push(m.skipped);
            }
        }
    }
    Ok(IndexSeries { kind, k_start, values, skipped_samples })
}

/// Relative difference between a classical index and its δ-widened
/// counterpart, as a percentage of the larger magnitude:
/// d = |modified − classical| / max(|modified|, |classical|) × 100.
/// Bounded by 100 for finite inputs; both inputs zero → 0 by convention.
pub fn difference_metric(classical: f64, modified: f64) -> f64 {
    if classical == 0.0 && modified == 0.0 {
        return 0.0;
    }
    math::abs(modified - classical) / math::abs(modified).max(math::abs(classical)) * 100.0
}

/// Everything one comparison produces: the two orbits' samples, the δ
/// series used, all four running index series, and the per-iteration
/// difference percentages between each classical/widened pair.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    reference_name: String,
    prediction_name: String,
    lbe_pair: (String, String),
    k_start: usize,
    reference: Vec<f64>,
    prediction: Vec<f64>,
    delta: Vec<f64>,
    rmse: IndexSeries,
    lrmse: IndexSeries,
    mape: IndexSeries,
    lmape: IndexSeries,
    d_rmse_pct: Vec<Option<f64>>,
    d_mape_pct: Vec<Option<f64>>,
}

impl ValidationReport {
    /// Name of the orbit playing y.
    pub fn reference_name(&self) -> &str {
        &self.reference_name
    }

    /// Name of the orbit playing ŷ.
    pub fn prediction_name(&self) -> &str {
        &self.prediction_name
    }

    /// Names of the orbit pair whose divergence produced δ.
    pub fn lbe_pair(&self) -> (&str, &str) {
        (&self.lbe_pair.0, &self.lbe_pair.1)
    }

    /// First validated sample index (window start).
    pub fn k_start(&self) -> usize {
        self.k_start
    }

    /// y samples.
    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    /// ŷ samples.
    pub fn prediction(&self) -> &[f64] {
        &self.prediction
    }

    /// δ samples.
    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn rmse(&self) -> &IndexSeries {
        &self.rmse
    }

    pub fn lrmse(&self) -> &IndexSeries {
        &self.lrmse
    }

    pub fn mape(&self) -> &IndexSeries {
        &self.mape
    }

    pub fn lmape(&self) -> &IndexSeries {
        &self.lmape
    }

    /// Per-iteration d(RMSE, LRMSE) percentage; absent where either side is.
    pub fn d_rmse_pct(&self) -> &[Option<f64>] {
        &self.d_rmse_pct
    }

    /// Per-iteration d(MAPE, LMAPE) percentage; absent where either side is.
    pub fn d_mape_pct(&self) -> &[Option<f64>] {
        &self.d_mape_pct
    }

    /// Number of samples (N+1).
    pub fn len(&self) -> usize {
        self.reference.len()
    }

    /// True when the report covers no samples (never produced here).
    pub fn is_empty(&self) -> bool {
        self.reference.is_empty()
    }

    /// Final sample index N.
    pub fn n(&self) -> usize {
        self.reference.len() - 1
    }
}

fn paired_difference(
    classical: &IndexSeries,
    modified: &IndexSeries,
) -> Vec<Option<f64>> {
    classical
        .values()
        .iter()
        .zip(modified.values())
        .map(|(c, m)| match (c, m) {
            (Some(c), Some(m)) => Some(difference_metric(*c, *m)),
            _ => None,
        })
        .collect()
}

/// Runs the full index battery for one (y, ŷ) comparison with a shared δ
/// series. `lbe_pair` names the orbits that produced δ (provenance only).
pub fn validation_report(
    reference: &Orbit,
    prediction: &Orbit,
    delta: &LbeSeries,
    lbe_pair: (&str, &str),
    k_start: usize,
) -> Result<ValidationReport, MetricsError> {
    if reference.len() != prediction.len() {
        return Err(MetricsError::LengthMismatch {
            left: reference.len(),
            right: prediction.len(),
        });
    }
    if reference.len() != delta.len() {
        return Err(MetricsError::LengthMismatch { left: reference.len(), right: delta.len() });
    }
    let y = reference.samples();
    let yhat = prediction.samples();
    let d = delta.delta();
    let rmse_series = running_index(IndexKind::Rmse, y, yhat, None, k_start)?;
    let lrmse_series = running_index(IndexKind::Lrmse, y, yhat, Some(d), k_start)?;
    let mape_series = running_index(IndexKind::Mape, y, yhat, None, k_start)?;
    let lmape_series = running_index(IndexKind::Lmape, y, yhat, Some(d), k_start)?;
    let d_rmse_pct = paired_difference(&rmse_series, &lrmse_series);
    let d_mape_pct = paired_difference(&mape_series, &lmape_series);
    Ok(ValidationReport {
        reference_name: reference.model_name().into(),
        prediction_name: prediction.model_name().into(),
        lbe_pair: (lbe_pair.0.into(), lbe_pair.1.into()),
        k_start,
        reference: y.into(),
        prediction: yhat.into(),
        delta: d.into(),
        rmse: rmse_series,
        lrmse: lrmse_series,
        mape: mape_series,
        lmape: lmape_series,
        d_rmse_pct,
        d_mape_pct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn orbit_of(samples: &[f64]) -> Orbit {
        Orbit::new("test".to_string(), "none".to_string(), samples.to_vec())
    }

    #[test]
    fn lbe_matches_direct_formula() {
        let a = orbit_of(&[1.0, 2.0]);
        let b = orbit_of(&[1.0, 3.0]);
        let s = lbe(&a, &b).unwrap();
        assert_eq!(s.delta(), &[0.0, 0.5]);
        assert_eq!(s.first_positive(), Some(1));

        let symmetric = lbe(&b, &a).unwrap();
        assert_eq!(s, symmetric);

        let zero = lbe(&a, &a).unwrap();
        assert!(zero.delta().iter().all(|&d| d == 0.0));
        assert_eq!(zero.first_positive(), None);
    }

    #[test]
    fn lbe_rejects_length_mismatch() {
        let a = orbit_of(&[1.0, 2.0]);
        let b = orbit_of(&[1.0, 2.0, 3.0]);
        assert_eq!(
            lbe(&a, &b).unwrap_err(),
            MetricsError::LengthMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn rmse_reference_values() {
        let y = [1.0, 2.0, 3.0];
        assert_eq!(rmse(&y, &y).unwrap(), Some(0.0));
        assert_eq!(rmse(&y, &[2.0, 2.0, 2.0]).unwrap(), Some(1.0));
        // √1/√2, both square roots correctly rounded
        let v = rmse(&y, &[1.0, 2.0, 4.0]).unwrap().unwrap();
        assert_eq!(v.to_bits(), 0.7071067811865475f64.to_bits());
    }

    #[test]
    fn rmse_is_undefined_on_constant_reference() {
        assert_eq!(rmse(&[2.0, 2.0], &[1.0, 3.0]).unwrap(), None);
        assert_eq!(rmse(&[], &[]).unwrap(), None);
    }

    #[test]
    fn mape_reference_values() {
        let m = mape(&[1.0, 2.0], &[1.1, 1.8]).unwrap();
        assert_eq!(m.value.unwrap().to_bits(), 0.10000000000000003f64.to_bits());
        assert_eq!(m.skipped, 0);

        let m = mape(&[0.0, 1.0], &[5.0, 1.0]).unwrap();
        assert_eq!(m.value, Some(0.0));
        assert_eq!(m.skipped, 1);

        let m = mape(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(m.value, None);
        assert_eq!(m.skipped, 2);
    }

    #[test]
    fn lrmse_widens_per_sample() {
        // k=0: ŷ = y (plus-branch, δ=0 ⇒ residual 0);
        // k=1: ŷ < y ⇒ residual 2 − 1·0.9 = 1.1
        let v = lrmse(&[4.0, 2.0], &[4.0, 1.0], &[0.0, 0.1]).unwrap().unwrap();
        assert_eq!(v.to_bits(), 0.7778174593052023f64.to_bits());
        // and that's larger than the unwidened index
        let r = rmse(&[4.0, 2.0], &[4.0, 1.0]).unwrap().unwrap();
        assert!(v > r);
    }

    #[test]
    fn zero_delta_collapses_to_classical_indices() {
        let y = [1.0, 2.0, 3.5, 0.25];
        let yhat = [1.5, 1.0, 3.0, 0.5];
        let zeros = [0.0; 4];
        assert_eq!(
            lrmse(&y, &yhat, &zeros).unwrap().unwrap().to_bits(),
            rmse(&y, &yhat).unwrap().unwrap().to_bits()
        );
        assert_eq!(
            lmape(&y, &yhat, &zeros).unwrap().value.unwrap().to_bits(),
            mape(&y, &yhat).unwrap().value.unwrap().to_bits()
        );
    }

    #[test]
    fn lmape_reference_value() {
        let m = lmape(&[2.0], &[1.0], &[0.1]).unwrap();
        assert_eq!(m.value, Some(0.55));
        assert_eq!(m.skipped, 0);
    }

    #[test]
    fn widening_never_shrinks_residuals_for_nonnegative_predictions() {
        let y = [3.0, -1.0, 0.5, 2.0, 0.125];
        let yhat = [2.5, 0.5, 1.0, 2.0, 0.0];
        let delta = [0.01, 0.2, 0.0, 0.5, 0.125];
        for k in 0..y.len() {
            let plain = math::abs(y[k] - yhat[k]);
            let widened = math::abs(widened_residual(y[k], yhat[k], delta[k]));
            assert!(widened >= plain, "sample {k} shrank: {widened} < {plain}");
        }
        let l = lrmse(&y, &yhat, &delta).unwrap().unwrap();
        let r = rmse(&y, &yhat).unwrap().unwrap();
        assert!(l >= r);
    }

    #[test]
    fn equal_samples_take_branches_of_equal_magnitude() {
        // ŷ = y: (1+δ) branch gives |y − y(1+δ)| = |δ·y| = the (1−δ) one.
        let plus = widened_residual(2.0, 2.0, 0.25);
        let minus = 2.0 - 2.0 * (1.0 - 0.25);
        assert_eq!(math::abs(plus), math::abs(minus));
    }

    #[test]
    fn difference_metric_reference_values() {
        assert_eq!(difference_metric(1.0, 1.0), 0.0);
        assert_eq!(difference_metric(1.0, 2.0), 50.0);
        assert_eq!(difference_metric(0.0, 0.0), 0.0);
        assert_eq!(
            difference_metric(1e-10, 1.0).to_bits(),
            99.99999998999999f64.to_bits()
        );
        // symmetric by construction
        assert_eq!(difference_metric(2.0, 1.0), 50.0);
    }

    #[test]
    fn running_series_matches_scalar_windows() {
        let y = [0.0, 1.0, 2.0, 3.0, 2.0];
        let yhat = [0.0, 1.5, 1.5, 3.5, 2.5];
        let s = running_index(IndexKind::Rmse, &y, &yhat, None, 1).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.values()[0], None);
        // entry 1: single-sample window, constant y ⇒ undefined
        assert_eq!(s.values()[1], None);
        for n in 2..5 {
            let scalar = rmse(&y[1..=n], &yhat[1..=n]).unwrap();
            assert_eq!(s.values()[n], scalar, "entry {n}");
        }
        assert_eq!(s.final_value(), rmse(&y[1..], &yhat[1..]).unwrap());
    }

    #[test]
    fn running_series_on_constant_reference_is_all_absent() {
        let y = [5.0; 6];
        let yhat = [4.0, 5.0, 6.0, 5.0, 4.0, 5.0];
        let s = running_index(IndexKind::Rmse, &y, &yhat, None, 2).unwrap();
        assert!(s.values().iter().all(|v| v.is_none()));
    }

    #[test]
    fn running_mape_counts_skips_per_window() {
        let y = [0.0, 0.0, 1.0, 2.0];
        let yhat = [1.0, 1.0, 1.0, 1.0];
        let s = running_index(IndexKind::Mape, &y, &yhat, None, 1).unwrap();
        assert_eq!(s.values()[1], None); // only the zero sample in window
        assert_eq!(s.skipped_at(1), 1);
        assert_eq!(s.values()[2], Some(0.0));
        assert_eq!(s.skipped_at(2), 1);
        assert_eq!(s.skipped_at(3), 1);
    }

    #[test]
    fn widened_kinds_require_delta() {
        let err = running_index(IndexKind::Lrmse, &[1.0], &[1.0], None, 0).unwrap_err();
        assert_eq!(err, MetricsError::MissingDelta);
    }

    #[test]
    fn report_series_are_aligned_and_consistent() {
        let y = orbit_of(&[0.5, 0.25, 1.0, 2.0, 3.0, 1.0]);
        let yhat = orbit_of(&[0.5, 0.25, 1.25, 1.75, 3.5, 0.5]);
        let other = orbit_of(&[0.5, 0.25, 1.25, 1.7, 3.4, 0.7]);
        let d = lbe(&yhat, &other).unwrap();
        let report = validation_report(&y, &yhat, &d, ("yhat", "other"), 2).unwrap();
        assert_eq!(report.len(), 6);
        assert_eq!(report.n(), 5);
        assert_eq!(report.k_start(), 2);
        assert_eq!(report.lbe_pair(), ("yhat", "other"));
        for series in [report.rmse(), report.lrmse(), report.mape(), report.lmape()] {
            assert_eq!(series.len(), 6);
            assert_eq!(series.k_start(), 2);
            assert!(series.values()[0].is_none());
            assert!(series.values()[1].is_none());
        }
        // difference defined exactly where both sides are
        for n in 0..6 {
            let both = report.rmse().value_at(n).is_some() && report.lrmse().value_at(n).is_some();
            assert_eq!(report.d_rmse_pct()[n].is_some(), both, "n={n}");
        }
        // scalar consistency at the final window
        let want = difference_metric(
            report.rmse().final_value().unwrap(),
            report.lrmse().final_value().unwrap(),
        );
        assert_eq!(report.d_rmse_pct()[5], Some(want));
    }
}
