#![no_std]
// index loops over fixed-size exponent arrays and matrices read better as written;
// `!(x <= t)` is deliberate so that NaN counts as a failure
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;
pub mod arith;
pub mod poly;
pub mod groebner;
pub mod modular;
pub mod catalog;
pub mod ricci;
pub mod realroots;
pub mod solver;
pub mod classifier;
