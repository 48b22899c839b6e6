//! Text formats, JSON, random samplers, property sweeps and the command line
//! for [`gfr_core`].

pub mod cli;
pub mod expr;
pub mod format;
pub mod json;
pub mod sample;
pub mod source;
pub mod verify;

pub use cli::{exit, run};
pub use expr::parse_expression;
pub use format::{parse_dot, parse_edge_list, parse_graph, write_dot, write_edge_list, ParseError};
