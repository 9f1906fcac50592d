//! Exact root-of-unity representation theory of the deformed para-Bose
//! superalgebra `pB_q = U_q[osp(1/2)]`.

pub mod exactnum;
pub mod algebra;
pub mod fockrep;
pub mod classify;
pub mod unitary;
pub mod sweep;
