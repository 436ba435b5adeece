//! Binds the guide's chapters into the doc-test suite, so every code block
//! in `book/src` compiles and runs against the current API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/digraphs.md")]
pub mod digraphs {}

#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}

#[doc = include_str!("../../../book/src/twins.md")]
pub mod twins {}

#[doc = include_str!("../../../book/src/enumeration.md")]
pub mod enumeration {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
