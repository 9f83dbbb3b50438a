//! Minimal open subgroups of `GL₂` over 2-adic and odd-prime-adic integers:
//! modular arithmetic, finite subgroup lattices, minimality certificates,
//! genus of modular curves, 2-adic Lie algebra checks and elliptic curve
//! identities.

pub mod error;
pub mod modarith;
pub mod subgroup;
pub mod modcurve;
pub mod minimality;
pub mod lie;
pub mod ellcurve;
