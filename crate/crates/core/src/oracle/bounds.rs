//! Closed-form size ceilings for the two structured classes.
//!
//! A space alpha-embeddable in a k-lacunary space has at most
//! 2 + log_k(alpha * Phi) points (a k-lacunary space Y satisfies
//! Phi(Y) >= k^(|Y|-2)); one alpha-embeddable in a binary k-HST has at most
//! 2^(1 + log_k(alpha * Phi)) points (a binary k-HST Y satisfies
//! Phi(Y) >= k^(log2|Y| - 1)).

use crate::error::OracleError;

fn check(alpha: f64, k: f64, phi: f64) -> Result<(), OracleError> {
    if !(k > 1.0) || !(alpha >= 1.0) || !(phi >= 1.0) {
        return Err(OracleError::BadParameters(format!(
            "need k > 1, alpha >= 1, phi >= 1; got k = {k}, alpha = {alpha}, phi = {phi}"
        )));
    }
    Ok(())
}

/// `2 + log_k(alpha * phi)`.
pub fn bound_lacunary_size(alpha: f64, k: f64, phi: f64) -> Result<f64, OracleError> {
    check(alpha, k, phi)?;
    Ok(2.0 + (alpha * phi).ln() / k.ln())
}

/// `2^(1 + log_k(alpha * phi))`.
pub fn bound_binary_hst_size(alpha: f64, k: f64, phi: f64) -> Result<f64, OracleError> {
    check(alpha, k, phi)?;
    Ok((1.0 + (alpha * phi).ln() / k.ln()).exp2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_substitutions() {
        assert_eq!(bound_lacunary_size(2.0, 2.0, 1.0).unwrap(), 3.0);
        assert_eq!(bound_lacunary_size(1.0, 2.0, 1.0).unwrap(), 2.0);
        assert!((bound_binary_hst_size(2.0, 2.0, 1.0).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(bound_lacunary_size(2.0, 1.0, 1.0).is_err());
        assert!(bound_binary_hst_size(0.5, 2.0, 1.0).is_err());
        assert!(bound_lacunary_size(2.0, 2.0, 0.9).is_err());
    }
}
