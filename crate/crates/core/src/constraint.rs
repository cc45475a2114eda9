use std::fmt;

/// Input power constraint on the transmitted intensity waveform.
///
/// Values are amplitudes in noise-standard-deviation units, so `mean` is the
/// SNR and `peak` the PNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerConstraint {
    /// Time-averaged amplitude at most `mean`.
    Average { mean: f64 },
    /// Amplitude at most `peak` at every instant.
    Peak { peak: f64 },
    /// Average at most `mean` and peak at most `ratio · mean`.
    Papr { mean: f64, ratio: f64 },
}

impl PowerConstraint {
    pub fn average(&self) -> Option<f64> {
        match *self {
            PowerConstraint::Average { mean } | PowerConstraint::Papr { mean, .. } => Some(mean),
            PowerConstraint::Peak { .. } => None,
        }
    }

    pub fn peak(&self) -> Option<f64> {
        match *self {
            PowerConstraint::Peak { peak } => Some(peak),
            PowerConstraint::Papr { mean, ratio } => Some(mean * ratio),
            PowerConstraint::Average { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PowerConstraint::Average { .. } => "AP",
            PowerConstraint::Peak { .. } => "PP",
            PowerConstraint::Papr { .. } => "PAPR",
        }
    }
}

impl fmt::Display for PowerConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PowerConstraint::Average { mean } => write!(f, "AP(mean={mean})"),
            PowerConstraint::Peak { peak } => write!(f, "PP(peak={peak})"),
            PowerConstraint::Papr { mean, ratio } => write!(f, "PAPR(mean={mean}, r={ratio})"),
        }
    }
}
