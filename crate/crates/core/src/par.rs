//! Data-parallel map helpers with a sequential fallback.
//!
//! Every caller is a pure, order-independent computation collected back in
//! input order, so the parallel and sequential paths return identical values.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map<I, O, F>(inputs: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    inputs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<I, O, F>(inputs: &[I], f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    inputs.iter().map(f).collect()
}

pub(crate) fn map_seq<I, O, F>(inputs: &[I], f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    inputs.iter().map(f).collect()
}
