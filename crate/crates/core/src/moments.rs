//! Placeholder, implemented in later commits.
