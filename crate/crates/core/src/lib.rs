//! Mod 2 cohomology and Adams E2 data for Madsen-Tillmann type spectra
//! `MT(d,r)` over the orthogonal, special orthogonal and spin families.
//!
//! The pipeline is: characteristic class rings ([`charrings`]) feed Thom
//! twisted Steenrod modules ([`mtmod`]), which are resolved over the
//! Steenrod algebra ([`steenrod`], [`resolution`]). The resulting Ext groups
//! are drawn and read off as 2-primary homotopy groups ([`charts`]) and
//! compared with reference tables ([`tables`]).

pub mod charrings;
pub mod charts;
pub mod f2linalg;
pub mod mtmod;
pub mod par;
pub mod resolution;
pub mod steenrod;
pub mod tables;
