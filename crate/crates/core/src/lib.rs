pub mod base;
pub mod data;
pub mod domain;
mod error;
pub mod family;
pub mod gof;
pub mod model;
pub mod mps;
pub mod optim;
pub mod report;
pub mod selftest;
pub mod special;

pub use base::{BaseDist, ShiftedParams};
pub use domain::Domain;
pub use error::{Error, Result};
pub use family::Family;
pub use model::{GDist, Model, ParameterVector, TailFlags};
pub use optim::{maximize, Method, OptResult, OptimizerConfig};
pub use mps::{fit, FitResult, MoranTest, SpacingContext};
pub use report::{evaluate, fit_report, Report, ReportOptions};
pub use selftest::{selftest, SelftestConfig, SelftestRow};
