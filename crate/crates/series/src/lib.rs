//! Truncated power series over Q, regularization and exponential normalization, plus
//! total-degree truncated polynomials in formal classes `p_1..p_r`.

mod error;
mod io;
mod multi;
mod truncated;

pub use error::SeriesError;
pub use io::{read_series, series_from_toml, series_to_toml, write_series};
pub use multi::{extract_leading_vandermonde, vandermonde, MultiPolyTrunc};
pub use truncated::TruncatedSeries;
