pub mod catalog;
pub mod derham;
pub mod format;
pub mod group;
pub mod linalg;
pub mod presentation;
pub mod quandle;
pub mod rootsys;
