/// Neumaier-compensated summation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

/// Weighted mean of `values` over `order`, accumulated in the given index
/// order (callers pass indices sorted by increasing weight).
pub fn weighted_mean(weights: &[f64], values: &[f64], order: &[usize]) -> f64 {
    let mass = compensated_sum(order.iter().map(|&i| weights[i]));
    compensated_sum(order.iter().map(|&i| weights[i] * values[i])) / mass
}
