//! Log-scaled representation of exponentially small eigenvalues:
//! value = mantissa * exp(log_scale).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    pub log_scale: f64,
    pub mantissa: f64,
}

impl LogScaled {
    pub fn from_value(value: f64, log_scale: f64) -> Self {
        LogScaled {
            log_scale,
            mantissa: value * (-log_scale).exp(),
        }
    }

    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }

    /// ln of the represented value; the comparison key for sorting.
    pub fn ln_value(&self) -> f64 {
        self.log_scale + self.mantissa.ln()
    }
}

/// The common log scale of the low-lying spectrum at parameter h:
/// `2 phi_min / h + ln(h)/2`.
pub fn spectral_log_scale(phi_min: f64, h: f64) -> f64 {
    2.0 * phi_min / h + 0.5 * h.ln()
}
