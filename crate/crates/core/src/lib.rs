pub mod cli;
pub mod decide;
pub mod formula;
pub mod fv;
pub mod gamma;
pub mod gen;
pub mod oracle;
pub mod qe;
pub mod ring;
