//! Pochhammer symbols (rising factorials).

/// A Pochhammer value `(a)_k = a (a+1) ⋯ (a+k−1)` in both product and log form.
///
/// The product form may overflow to `inf` for large arguments; `ln_value`
/// remains finite whenever every factor is positive, which is the case for all
/// uses in this crate (`a ≥ 1`). `(a)_0 = 1` with `ln_value = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pochhammer {
    /// The product `(a)_k` (may be `inf` when it exceeds f64 range).
    pub value: f64,
    /// `ln (a)_k`, finite for positive bases.
    pub ln_value: f64,
}

impl Pochhammer {
    /// Square root of the product, computed through the log form so it stays
    /// finite whenever `(a)_k` itself fits after the square root.
    pub fn sqrt_value(&self) -> f64 {
        (0.5 * self.ln_value).exp()
    }
}

/// Compute `(a)_k`.
///
/// # Examples
///
/// ```
/// use polyzero::specfun::pochhammer;
///
/// assert_eq!(pochhammer(3.0, 4).value, 360.0);      // 3·4·5·6
/// assert_eq!(pochhammer(5.5, 0).value, 1.0);
/// ```
pub fn pochhammer(a: f64, k: u32) -> Pochhammer {
    let mut value = 1.0f64;
    let mut ln_value = 0.0f64;
    for j in 0..k {
        let factor = a + j as f64;
        value *= factor;
        ln_value += factor.ln();
    }
    Pochhammer { value, ln_value }
}
