pub mod intmat;
pub mod rootsys;
pub mod satake;
pub mod atlas;
pub mod matrixlie;
pub mod verify;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/root-systems.md")]
    mod root_systems {}
    #[doc = include_str!("../../../book/src/satake-diagrams.md")]
    mod satake_diagrams {}
    #[doc = include_str!("../../../book/src/leaf-atlas.md")]
    mod leaf_atlas {}
    #[doc = include_str!("../../../book/src/matrix-realizations.md")]
    mod matrix_realizations {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
