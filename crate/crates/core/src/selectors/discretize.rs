/// Equal-width discretization of a column into `bins` bins.
///
/// The bin grid spans [min, max]; values on the upper edge land in the last
/// bin. A constant column falls entirely into bin 0. Positive-scale affine
/// transforms of the column leave the binning unchanged (up to floating-point
/// ties on bin edges), which is what makes the downstream rankings
/// affine-invariant.
pub(crate) fn equal_width_bins(values: &[f64], bins: usize) -> Vec<usize> {
    debug_assert!(bins >= 2);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return vec![0; values.len()];
    }
    let width = (hi - lo) / bins as f64;
    values
        .iter()
        .map(|&v| (((v - lo) / width) as usize).min(bins - 1))
        .collect()
}
