//! Succinct rank and select over plain bit vectors.
//!
//! Given a bit vector, `rank(i)` counts the set bits among positions
//! `0..=i` and `select(j)` locates the `j`-th set bit. The indexes here
//! answer both while storing only a few percent of the vector's size in
//! metadata:
//!
//! * [`SpiderIndex`] interleaves per-block rank counts with the bits
//!   themselves so a rank query costs a single cache line beyond the top
//!   array, and drives select with a two-level sampled array plus
//!   interpolated predictions (about 3.8% overhead).
//! * [`NiSpiderIndex`] leaves the vector untouched, keeps flat rank arrays
//!   beside it, and drives select with a one-level sampled array and the
//!   same prediction idea (about 3.6% overhead).
//! * [`variants`] holds the two hybrid combinations of those pieces and a
//!   simple strawman baseline, plus a registry for building any of the five
//!   by name.
//!
//! [`oracle`] provides linear-scan reference answers used as ground truth in
//! tests and verification; [`datagen`] builds reproducible synthetic and
//! text-derived vectors; [`io`] defines the on-disk formats.

pub mod bits;
pub mod block;
pub mod broadword;
pub mod datagen;
pub mod io;
mod layout;
pub mod ni_spider;
pub mod oracle;
mod select;
pub mod space;
pub mod spider;
pub mod variants;

pub use bits::BitVector;
pub use io::Error;
pub use ni_spider::NiSpiderIndex;
pub use space::{SpaceComponent, SpaceReport};
pub use spider::SpiderIndex;
pub use variants::{
    build_variant, AnyIndex, RankLayout, SelectLevels, StrawmanIndex, StructureKind, VariantConfig,
};
