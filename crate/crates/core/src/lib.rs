//! Exact higher capacities of ellipsoids, polydisks and four-dimensional
//! toric domains, together with the capacity ratio `c_k / vol^(1/n)` and
//! checks of where that ratio is maximal.
//!
//! Every value is an exact rational; see [`exact`].
//!
//! ```
//! use capax::ellipsoid::Ellipsoid;
//! use capax::exact::int;
//! use capax::ratio::ratio_ellipsoid;
//!
//! let e = Ellipsoid::from_integers(&[1, 2]).unwrap();
//! assert_eq!(e.capacity(2).unwrap(), int(2));
//! assert_eq!(ratio_ellipsoid(&e, 2).unwrap().nth_power(), &int(2));
//! ```

pub mod ellipsoid;
pub mod error;
pub mod exact;
pub mod optimize;
pub mod ratio;
pub mod toric;

// The guide's snippets run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/ellipsoids.md")]
    mod ellipsoids {}
    #[doc = include_str!("../../../book/src/toric.md")]
    mod toric {}
    #[doc = include_str!("../../../book/src/ratios.md")]
    mod ratios {}
    #[doc = include_str!("../../../book/src/maximizers.md")]
    mod maximizers {}
    #[doc = include_str!("../../../book/src/convex.md")]
    mod convex {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
