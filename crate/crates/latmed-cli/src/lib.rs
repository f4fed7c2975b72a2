//! Library half of the lattice toolkit front end: the text file format
//! shared by the command implementations and their tests.

pub mod format;
