//! Brute-force graded dimensions of the bracket quotient for each group
//! family at small rank.

use ptl::hp0::{hp0_graded_dims, Hp0Options, SubgroupKind};
use ptl::weyl::{GroupFamily, GroupSpec};

fn main() -> ptl::Result<()> {
    for family in GroupFamily::ALL {
        let spec = GroupSpec::new(family, 3)?;
        let t = hp0_graded_dims(spec, SubgroupKind::Full, 8, &Hp0Options::default())?;
        println!("{}", t.to_text());
    }
    Ok(())
}
