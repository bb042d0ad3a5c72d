#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod acceptance;
pub mod barres;
pub mod chaincore;
pub mod coalg;
pub mod error;
pub mod operad;
pub mod stable;
pub mod suspops;
pub mod symgrp;

pub use error::{Error, Result};
pub use symgrp::{tmap, CompositionShape, Permutation};
