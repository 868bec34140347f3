use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Bound,
    Continuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Semiclassical,
    Exact,
    Bethe,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Semiclassical => "semiclassical",
            Method::Exact => "exact",
            Method::Bethe => "bethe",
            Method::Oracle => "oracle",
        }
    }
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Bound => "bound",
            Kind::Continuum => "continuum",
        }
    }
}

/// One spectral line: n is the (radial) quantum number, l the angular label (0 in 1D).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n: usize,
    pub l: f64,
    pub energy: f64,
    pub kind: Kind,
    pub method: Method,
}

impl SpectrumEntry {
    pub fn bound(n: usize, l: f64, energy: f64, method: Method) -> Self {
        Self { n, l, energy, kind: Kind::Bound, method }
    }
}
