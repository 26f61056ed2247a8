#![allow(dead_code)]

pub mod fourier_motzkin;
pub mod problems;
pub mod quadrature;
