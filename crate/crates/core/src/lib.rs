pub mod address;
pub mod angle;
pub mod dynamic;
pub mod error;
pub mod frac;
pub mod kneading;
pub mod lamination;
pub mod principles;
pub mod render;
pub mod report;
pub mod tuning;
pub mod vistree;

pub use angle::{Angle, BitWord, Chord};
pub use dynamic::{context_of, DynamicPair, LeafContext};
pub use error::{Error, Result};
pub use frac::Frac;
pub use kneading::{InternalAddress, KneadingSequence, Sym};
pub use lamination::{LaminationStore, Leaf, Separator};
pub use render::{RenderSpec, RenderWhat};
pub use tuning::SublimbDesc;
pub use vistree::{trees_equivalent, VisNode, VisTree};
