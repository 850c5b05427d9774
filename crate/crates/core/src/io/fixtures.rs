//! The stored witness corpus, compiled in.

pub const FIXTURES: &[(&str, &str)] = &[
    ("CoCommHomTridendriform-d1-F5-1.hcs", include_str!("../../fixtures/CoCommHomTridendriform-d1-F5-1.hcs")),
    ("CoCommHomTridendriform-d2-F5-1.hcs", include_str!("../../fixtures/CoCommHomTridendriform-d2-F5-1.hcs")),
    ("CoCommHomTridendriform-d2-Q-1.hcs", include_str!("../../fixtures/CoCommHomTridendriform-d2-Q-1.hcs")),
    ("CoCommHomTridendriform-d2-Q-2.hcs", include_str!("../../fixtures/CoCommHomTridendriform-d2-Q-2.hcs")),
    ("HomCoassoc-d1-F5-1.hcs", include_str!("../../fixtures/HomCoassoc-d1-F5-1.hcs")),
    ("HomCoassoc-d2-F5-1.hcs", include_str!("../../fixtures/HomCoassoc-d2-F5-1.hcs")),
    ("HomCoassoc-d2-Q-1.hcs", include_str!("../../fixtures/HomCoassoc-d2-Q-1.hcs")),
    ("HomCoassoc-d2-Q-2.hcs", include_str!("../../fixtures/HomCoassoc-d2-Q-2.hcs")),
    ("HomCoassoc-d2-Q-hand.hcs", include_str!("../../fixtures/HomCoassoc-d2-Q-hand.hcs")),
    ("HomCoassoc-d3-Q-hand.hcs", include_str!("../../fixtures/HomCoassoc-d3-Q-hand.hcs")),
    ("HomCoassocRB-d1-F5-1.hcs", include_str!("../../fixtures/HomCoassocRB-d1-F5-1.hcs")),
    ("HomCoassocRB-d2-F5-1.hcs", include_str!("../../fixtures/HomCoassocRB-d2-F5-1.hcs")),
    ("HomCoassocRB-d2-Q-1.hcs", include_str!("../../fixtures/HomCoassocRB-d2-Q-1.hcs")),
    ("HomCoassocRB-d2-Q-2.hcs", include_str!("../../fixtures/HomCoassocRB-d2-Q-2.hcs")),
    ("HomCoassocRB-d2-Q-hand.hcs", include_str!("../../fixtures/HomCoassocRB-d2-Q-hand.hcs")),
    ("HomCoassocRB-d2-Q-w0a.hcs", include_str!("../../fixtures/HomCoassocRB-d2-Q-w0a.hcs")),
    ("HomCoassocRB-d2-Q-w0c.hcs", include_str!("../../fixtures/HomCoassocRB-d2-Q-w0c.hcs")),
    ("HomCoassocRB-d2-Q-w1.hcs", include_str!("../../fixtures/HomCoassocRB-d2-Q-w1.hcs")),
    ("HomDendriform-d1-F5-1.hcs", include_str!("../../fixtures/HomDendriform-d1-F5-1.hcs")),
    ("HomDendriform-d2-F5-1.hcs", include_str!("../../fixtures/HomDendriform-d2-F5-1.hcs")),
    ("HomDendriform-d2-Q-1.hcs", include_str!("../../fixtures/HomDendriform-d2-Q-1.hcs")),
    ("HomDendriform-d2-Q-2.hcs", include_str!("../../fixtures/HomDendriform-d2-Q-2.hcs")),
    ("HomLie-d1-F5-1.hcs", include_str!("../../fixtures/HomLie-d1-F5-1.hcs")),
    ("HomLie-d2-F5-1.hcs", include_str!("../../fixtures/HomLie-d2-F5-1.hcs")),
    ("HomLie-d2-Q-1.hcs", include_str!("../../fixtures/HomLie-d2-Q-1.hcs")),
    ("HomLie-d2-Q-2.hcs", include_str!("../../fixtures/HomLie-d2-Q-2.hcs")),
    ("HomLie-d2-Q-hand.hcs", include_str!("../../fixtures/HomLie-d2-Q-hand.hcs")),
    ("HomLie-d3-Q-hand.hcs", include_str!("../../fixtures/HomLie-d3-Q-hand.hcs")),
    ("HomLieRB-d1-F5-1.hcs", include_str!("../../fixtures/HomLieRB-d1-F5-1.hcs")),
    ("HomLieRB-d2-F5-1.hcs", include_str!("../../fixtures/HomLieRB-d2-F5-1.hcs")),
    ("HomLieRB-d2-Q-1.hcs", include_str!("../../fixtures/HomLieRB-d2-Q-1.hcs")),
    ("HomLieRB-d2-Q-2.hcs", include_str!("../../fixtures/HomLieRB-d2-Q-2.hcs")),
    ("HomPoisson-d1-F5-1.hcs", include_str!("../../fixtures/HomPoisson-d1-F5-1.hcs")),
    ("HomPoisson-d2-F5-1.hcs", include_str!("../../fixtures/HomPoisson-d2-F5-1.hcs")),
    ("HomPoisson-d2-Q-1.hcs", include_str!("../../fixtures/HomPoisson-d2-Q-1.hcs")),
    ("HomPoisson-d2-Q-2.hcs", include_str!("../../fixtures/HomPoisson-d2-Q-2.hcs")),
    ("HomPreLie-d1-F5-1.hcs", include_str!("../../fixtures/HomPreLie-d1-F5-1.hcs")),
    ("HomPreLie-d2-F5-1.hcs", include_str!("../../fixtures/HomPreLie-d2-F5-1.hcs")),
    ("HomPreLie-d2-Q-1.hcs", include_str!("../../fixtures/HomPreLie-d2-Q-1.hcs")),
    ("HomPreLie-d2-Q-2.hcs", include_str!("../../fixtures/HomPreLie-d2-Q-2.hcs")),
    ("HomTridendriform-d1-F5-1.hcs", include_str!("../../fixtures/HomTridendriform-d1-F5-1.hcs")),
    ("HomTridendriform-d2-F5-1.hcs", include_str!("../../fixtures/HomTridendriform-d2-F5-1.hcs")),
    ("HomTridendriform-d2-Q-1.hcs", include_str!("../../fixtures/HomTridendriform-d2-Q-1.hcs")),
    ("HomTridendriform-d2-Q-2.hcs", include_str!("../../fixtures/HomTridendriform-d2-Q-2.hcs")),
    ("HomTridendriformAlgebra-d2-F5-1.hcs", include_str!("../../fixtures/HomTridendriformAlgebra-d2-F5-1.hcs")),
    ("PostHomLie-d2-F5-1.hcs", include_str!("../../fixtures/PostHomLie-d2-F5-1.hcs")),
    ("PostHomLie-d2-Q-1.hcs", include_str!("../../fixtures/PostHomLie-d2-Q-1.hcs")),
    ("PostHomLie-d2-Q-2.hcs", include_str!("../../fixtures/PostHomLie-d2-Q-2.hcs")),
    ("PostHomLieComodule-F5-1.hcs", include_str!("../../fixtures/PostHomLieComodule-F5-1.hcs")),
    ("PostHomLieComodule-Q-1.hcs", include_str!("../../fixtures/PostHomLieComodule-Q-1.hcs")),
    ("PostHomLieComodule-Q-2.hcs", include_str!("../../fixtures/PostHomLieComodule-Q-2.hcs")),
    ("PostHomPoisson-d1-F5-1.hcs", include_str!("../../fixtures/PostHomPoisson-d1-F5-1.hcs")),
    ("PostHomPoisson-d2-F5-1.hcs", include_str!("../../fixtures/PostHomPoisson-d2-F5-1.hcs")),
    ("PostHomPoisson-d2-Q-1.hcs", include_str!("../../fixtures/PostHomPoisson-d2-Q-1.hcs")),
    ("PostHomPoisson-d2-Q-2.hcs", include_str!("../../fixtures/PostHomPoisson-d2-Q-2.hcs")),
    ("TridendComodule-F5-1.hcs", include_str!("../../fixtures/TridendComodule-F5-1.hcs")),
    ("TridendComodule-Q-1.hcs", include_str!("../../fixtures/TridendComodule-Q-1.hcs")),
    ("TridendComodule-Q-2.hcs", include_str!("../../fixtures/TridendComodule-Q-2.hcs")),
];
