//! The guide under `book/` has no way to run its listings, so every chapter
//! is pulled in here as module documentation and `cargo test` runs the
//! listings as doctests. One module per chapter keeps failures traceable.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/bayes-factor.md")]
mod bayes_factor {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/predictive.md")]
mod predictive {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/operating-characteristics.md")]
mod operating_characteristics {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/calibration.md")]
mod calibration {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/simon.md")]
mod simon {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
