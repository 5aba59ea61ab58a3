//! Exact computation with averaging operators `f(x f(y)) = f(x) f(y)` on
//! commutative algebras.

pub mod decide;
pub mod findim;
pub mod freeavg;
pub mod gen;
pub mod io;
pub mod linalg;
pub mod par;
pub mod scalar;
pub mod terms;
