/// Neumaier-compensated sum: keeps a running correction for the digits an
/// ordinary sum of mixed-magnitude terms drops.
pub fn neumaier_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &t in terms {
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::neumaier_sum;

    #[test]
    fn recovers_cancelled_digits() {
        // 1 + 1e100 - 1e100 = 1: plain folds give 0
        assert_eq!(neumaier_sum(&[1.0, 1e100, -1e100]), 1.0);
        let plain: f64 = [1.0, 1e100, -1e100].iter().sum();
        assert_eq!(plain, 0.0);
    }
}
