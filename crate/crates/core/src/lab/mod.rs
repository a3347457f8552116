//! Instance generation, theorem sweeps, converse-failure searches and the
//! worked examples.

mod examples;
mod generate;
mod report;
mod search;
mod sweep;

pub use examples::{
    example_3_1, example_3_1_pair, example_3_2, BasisImage, Example31Record, Example32Params,
    Example32Record,
};
pub use generate::{Generator, GeneratorConfig, PRNG_DESCRIPTION};
pub use report::{Instance, NamedMatrix, NamedScalar, SweepMode, SweepReport};
pub use search::{search_converse_failures, seed_pairs, SearchTarget};
pub use sweep::{
    small_matrices, sweep_fong_sourour_exhaustive, sweep_thm, sweep_thm21_exhaustive,
    SMALL_ENTRIES,
};
