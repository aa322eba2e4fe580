pub mod document;
pub mod generate;
pub mod parse;
pub mod svg;

pub use document::{EdgeRecord, LayoutDocument, VertexRecord};
pub use generate::{gen_random_dag, gen_random_dag_with_edges, GenError};
pub use parse::{parse_graph, parse_paths, to_edge_list, ParseError, ParsedGraph};
pub use svg::{emit_svg, SvgOptions};
