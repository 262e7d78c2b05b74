use ups_core::{data, embedding::*, sat::Budget};
fn main() {
    let ot = data::listing1_order_type();
    let t = std::time::Instant::now();
    for (i, g) in data::conflict_all().iter().enumerate() {
        let t0 = std::time::Instant::now();
        let v = decide_embeddable(g, &ot, Budget::unlimited()).unwrap();
        println!("{i} {} {:?}", v.is_embeddable(), t0.elapsed());
    }
    println!("total {:?}", t.elapsed());
    let f = ups_core::graphs::generate_stacked(11);
    let t = std::time::Instant::now();
    let mut c = 0;
    for s in &f { if decide_embeddable(&s.graph(), &ot, Budget::unlimited()).unwrap().is_embeddable() { c += 1; } }
    println!("434: {c} {:?}", t.elapsed());
}
