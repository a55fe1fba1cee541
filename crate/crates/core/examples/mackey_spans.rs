//! Span composition and evaluation in a constant coefficient system.

use parcohom::groupoid::skeleta;
use parcohom::mackey::{
    check_mackey_axioms, compose_span_sums, constant_mackey, evaluate_span_sum, Coefficient, Span, SpanSum,
};

fn main() {
    let p = skeleta::s11();
    let z = constant_mackey(Coefficient::Integers, &p);
    println!("axioms: {:?}", check_mackey_axioms(&z, &p));
    let p0 = p.generator("p0").unwrap();
    let tr = SpanSum::single(&p, 1, Span::tr(&p, p0)).unwrap();
    let res = SpanSum::single(&p, 1, Span::res(&p, p0)).unwrap();
    for (name, s) in [("tr", &tr), ("res", &res)] {
        println!("{name} = {}  evaluates to\n{}", s.show(&p), evaluate_span_sum(&z, &p, s).unwrap());
    }
    let res_tr = compose_span_sums(&p, &res, &tr).unwrap();
    println!("res∘tr = {}\n{}", res_tr.show(&p), evaluate_span_sum(&z, &p, &res_tr).unwrap());
    let tr_res = compose_span_sums(&p, &tr, &res).unwrap();
    println!("tr∘res = {}\n{}", tr_res.show(&p), evaluate_span_sum(&z, &p, &tr_res).unwrap());
}
