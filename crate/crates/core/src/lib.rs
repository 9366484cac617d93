//! Exact computation with Schmidt arrangements and K-Apollonian packings.

pub mod arrangement;
pub mod circle;
pub mod clusters;
pub mod commands;
pub mod curvlab;
pub mod data;
pub mod geom;
pub mod groups;
pub mod io;
pub mod mat;
pub mod packing;
pub mod qint;
pub mod svg;
