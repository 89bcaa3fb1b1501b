pub mod bruhat;
pub mod cache;
pub mod coeff;
pub mod composition;
pub mod error;
pub mod format;
pub mod kl;
pub mod kostka;
pub mod macdonald;
pub mod memo;
pub mod parabolic;
pub mod polyrep;
pub mod scan;
pub mod selftest;
pub mod tableaux;

pub use coeff::CoeffPoly;
pub use composition::{Cell, Composition, MarkedDiagram};
pub use error::{Error, Result};
pub use parabolic::ModuleElement;
pub use polyrep::ZPoly;
