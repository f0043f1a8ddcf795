//! Text formats, JSON and DOT export, and the `rearr` command-line tool for
//! [`rearr_core`].

pub mod cli;
pub mod diagram_text;
pub mod dot;
mod error;
pub mod system_text;

pub use diagram_text::{parse_diagram, parse_element, parse_elements, serialize_elements};
pub use error::{Error, Result};
pub use system_text::{load_system, parse_system, serialize_system};
