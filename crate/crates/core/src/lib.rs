//! Monotones of finite preorders and of the uncertainty preorder on
//! probability vectors.
//!
//! * [`order`]: finite preorders, up-sets, maximal elements, the interval
//!   example on `[0,1] ∪ [2,3]`.
//! * [`monotones`]: classification of real functions, multi-utilities,
//!   geometric aggregation of increasing families and the constructions of
//!   injective monotones from them.
//! * [`separability`]: the four density notions and multi-utilities built
//!   from dense subsets.
//! * [`majorization`]: Lorenz utilities, entropy, the maximum-entropy audit,
//!   density witnesses and catalysis checks.
//!
//! Every order-theoretic computation is exact (`BigRational`); floating point
//! appears only in entropy values.

pub mod error;
pub mod majorization;
pub mod monotones;
pub mod order;
pub mod rational;
pub mod separability;

pub use error::{Error, Result};
pub use majorization::{Dist, EnergyFunction, EntropyUnit, MaxentReport};
pub use monotones::{
    classify, is_multi_utility, IncreasingFamily, MonotoneClass, MultiUtility, ValueTable,
};
pub use order::{ElementSet, FinitePreorder, OrderRelation};
pub use rational::Rational;
pub use separability::{DensityKind, DensityReport};
