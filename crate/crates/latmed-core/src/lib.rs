//! Finite-lattice toolkit: lattices from cover relations, the constructions
//! used in median analysis (chains, products, glued sums, interval removal),
//! remoteness and median computation on covering graphs, breadth, exhaustive
//! enumeration of small lattices, and property-verification campaigns.

pub mod bits;
mod lattice;

pub use lattice::{ElementSet, Lattice, LatticeError};

mod construct;

pub use construct::{
    boolean, build_gk, build_lnk, chain, figure1, glued_sum, product, remove_interval,
    ConstructError, Gk, IntervalRemovalSpec, Lnk, ProductLattice,
};

mod median;

pub use median::{
    breadth, breadth_bruteforce, c1, check_c1_property, m_lower, m_upper, median_set, pb_partition,
    remoteness, C1CheckReport, C1Violation, MedianError, MedianReport, PBPartition, Profile,
};

mod enumerate;

pub use enumerate::{enumerate_lattices, ENUMERATION_CAP};

mod verify;

pub use verify::{
    counterexample_report, verify_lemmas, verify_product_laws, verify_theorem_a, CampaignResult,
    HarnessError, ProductSampleSpec, Violation,
};
