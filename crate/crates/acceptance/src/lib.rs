//! Holds the `acceptance` test target; nothing is exported.
