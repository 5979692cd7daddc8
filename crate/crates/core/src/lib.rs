pub mod algebra;
pub mod chaincond;
pub mod error;
pub mod moore;
pub mod opg;
pub mod oracle;
pub mod report;
pub mod shatter;
pub mod suite;
pub mod valo;

pub use error::{Error, Result};

pub type Gf = algebra::GfElem;
pub type Series = algebra::TruncatedSeries;
pub type RatFn = algebra::RationalFunction;
pub type GfIsoData = moore::IsoData<algebra::GfElem>;
pub type SeriesIsoData = moore::IsoData<algebra::TruncatedSeries>;
