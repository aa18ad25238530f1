//! The six special functions of the artifact (D5, D5*, omega, f, h1, h2) in
//! every representation they admit: Eulerian q-series, alternative series,
//! and Lerch (Appell-Lerch) bilateral sums.

mod eulerian;
mod expansion;
mod lerch;

pub use eulerian::{
    d5_alt, d5_series, d5_star_at_root, d5_star_series, d5_star_series_opts, f_alt, f_series,
    h1_series, h2_series, omega_alt, omega_series, qhyper_lhs, qhyper_rhs,
};
pub use expansion::{
    eta_correction_expansion, expansion, f_alt_expansion, omega_alt_expansion,
    pochratio_sq_expansion,
};
pub use lerch::{lerch_f, lerch_h1, lerch_h2, lerch_omega};

use crate::error::{Error, Result};
use crate::numkernel::{EvalResult, Nome};

/// Which function is being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionTag {
    D5,
    D5Star,
    Omega,
    F,
    H1,
    H2,
}

impl FunctionTag {
    pub const ALL: [FunctionTag; 6] = [
        FunctionTag::D5,
        FunctionTag::D5Star,
        FunctionTag::Omega,
        FunctionTag::F,
        FunctionTag::H1,
        FunctionTag::H2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FunctionTag::D5 => "d5",
            FunctionTag::D5Star => "d5-star",
            FunctionTag::Omega => "omega",
            FunctionTag::F => "f",
            FunctionTag::H1 => "h1",
            FunctionTag::H2 => "h2",
        }
    }

    pub fn parse(s: &str) -> Result<FunctionTag> {
        match s.to_ascii_lowercase().as_str() {
            "d5" => Ok(FunctionTag::D5),
            "d5-star" | "d5star" | "d5_star" => Ok(FunctionTag::D5Star),
            "omega" => Ok(FunctionTag::Omega),
            "f" => Ok(FunctionTag::F),
            "h1" => Ok(FunctionTag::H1),
            "h2" => Ok(FunctionTag::H2),
            other => Err(Error::Domain(format!("unknown function tag: {other}"))),
        }
    }

    /// Representations for which a defining formula exists.
    pub fn representations(&self) -> &'static [Representation] {
        use Representation::*;
        match self {
            FunctionTag::D5 => &[PrimarySeries, AltSeries],
            FunctionTag::D5Star => &[PrimarySeries],
            FunctionTag::Omega | FunctionTag::F => &[PrimarySeries, AltSeries, Lerch],
            FunctionTag::H1 | FunctionTag::H2 => &[PrimarySeries, Lerch],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    PrimarySeries,
    AltSeries,
    Lerch,
}

impl Representation {
    pub fn name(&self) -> &'static str {
        match self {
            Representation::PrimarySeries => "primary",
            Representation::AltSeries => "alt",
            Representation::Lerch => "lerch",
        }
    }

    pub fn parse(s: &str) -> Result<Representation> {
        match s.to_ascii_lowercase().as_str() {
            "primary" | "series" => Ok(Representation::PrimarySeries),
            "alt" | "alternative" => Ok(Representation::AltSeries),
            "lerch" => Ok(Representation::Lerch),
            other => Err(Error::Domain(format!("unknown representation: {other}"))),
        }
    }
}

/// A (function, representation) pair; construction rejects pairs with no
/// defining formula so downstream dispatch is total.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionId {
    tag: FunctionTag,
    representation: Representation,
}

impl FunctionId {
    pub fn new(tag: FunctionTag, representation: Representation) -> Result<FunctionId> {
        if !tag.representations().contains(&representation) {
            return Err(Error::UnsupportedRepresentation {
                tag: tag.name().into(),
                representation: representation.name().into(),
            });
        }
        Ok(FunctionId { tag, representation })
    }

    pub fn tag(&self) -> FunctionTag {
        self.tag
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn evaluate(&self, q: &Nome, tol: f64) -> Result<EvalResult> {
        use FunctionTag::*;
        use Representation::*;
        match (self.tag, self.representation) {
            (D5, PrimarySeries) => d5_series(q, tol),
            (D5, AltSeries) => d5_alt(q, tol),
            (D5Star, PrimarySeries) => d5_star_series(q, tol),
            (Omega, PrimarySeries) => omega_series(q, tol),
            (Omega, AltSeries) => omega_alt(q, tol),
            (Omega, Lerch) => lerch_omega(q, tol),
            (F, PrimarySeries) => f_series(q, tol),
            (F, AltSeries) => f_alt(q, tol),
            (F, Lerch) => lerch_f(q, tol),
            (H1, PrimarySeries) => h1_series(q, tol),
            (H1, Lerch) => lerch_h1(q, tol),
            (H2, PrimarySeries) => h2_series(q, tol),
            (H2, Lerch) => lerch_h2(q, tol),
            _ => unreachable!("constructor rejects unsupported pairs"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_without_formulas_are_rejected() {
        assert!(FunctionId::new(FunctionTag::D5, Representation::Lerch).is_err());
        assert!(FunctionId::new(FunctionTag::D5Star, Representation::AltSeries).is_err());
        assert!(FunctionId::new(FunctionTag::H1, Representation::AltSeries).is_err());
        assert!(FunctionId::new(FunctionTag::D5, Representation::AltSeries).is_ok());
        assert!(FunctionId::new(FunctionTag::H2, Representation::Lerch).is_ok());
    }

    #[test]
    fn tag_names_round_trip() {
        for tag in FunctionTag::ALL {
            assert_eq!(FunctionTag::parse(tag.name()).unwrap(), tag);
        }
        assert!(FunctionTag::parse("d7").is_err());
    }
}
