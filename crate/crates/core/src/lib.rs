pub mod cech;
pub mod charvar;
pub mod cli;
pub mod exact;
pub mod projconn;
pub mod riemann;
