//! Regenerates the committed golden table:
//!
//!     cargo run -p precision-oracle --example generate_goldens > \
//!         crates/precision-oracle/goldens/delta_equal_spacing.v1.txt

fn main() {
    print!("{}", precision_oracle::golden_delta_table(14).unwrap());
}
