use grs_core::analysis::{default_parity, is_parity_function};
use grs_core::catalog::{all_finite_tags, finite_system};
use grs_core::Rat;

#[test]
fn probe() {
    for tag in all_finite_tags::<Rat>(3) {
        let rs = finite_system(&tag).unwrap();
        let par = default_parity(&rs);
        match is_parity_function(&rs, &par) {
            Ok(true) => {}
            Ok(false) => println!("NOT A SOLUTION: {tag}"),
            Err(e) => println!("ERROR on {tag}: {e}"),
        }
    }
}
