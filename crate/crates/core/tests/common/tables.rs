// Characteristic-polynomial tables: (symmetric part, triple part).

pub type Table = (&'static [(&'static str, usize)], &'static [([&'static str; 3], usize)]);

pub const TABLES: &[(&str, Table)] = &[
    (
        "z4z3",
        (
            &[("t^3 - t^2", 6), ("t^3 + t^2 + t", 4), ("t^3 - t^2 + t - 1", 1)],
            &[(["t^3", "t^3", "t^3"], 4)],
        ),
    ),
    (
        "lader_z3",
        (
            &[("t^3 - t^2", 4), ("t^3 + t^2 + t", 1)],
            &[
                (["t^3 - t^2", "t^3", "t^3"], 3),
                (["t^3", "t^3", "t^3 + t^2 + t"], 1),
                (["t^3", "t^3", "t^3 - t^2 + t - 1"], 2),
            ],
        ),
    ),
    (
        "twofix_z3",
        (
            &[("t^3 - 2t^2 + t", 1), ("t^3 - t^2", 1)],
            &[
                (["t^3", "t^3", "t^3"], 1),
                (["t^3 - t^2", "t^3 - t^2", "t^3 + t^2 + t"], 1),
                (["t^3 - t^2", "t^3", "t^3"], 2),
                (["t^3 - t^2", "t^3 - t^2", "t^3"], 2),
                (["t^3 - t^2", "t^3 - t^2", "t^3 + t^2"], 1),
            ],
        ),
    ),
    (
        "addtl1",
        (
            &[("t^3 - t^2", 4), ("t^3 + t^2 + t", 1)],
            &[
                (["t^3", "t^3", "t^3"], 3),
                (["t^3 - t^2", "t^3 + t^2", "t^3"], 1),
                (["t^3 - t^2", "t^3", "t^3 - t^2 + t"], 1),
                (["t^3 - t^2", "t^3 - t^2", "t^3"], 1),
            ],
        ),
    ),
    (
        "addtl2",
        (
            &[("t^3 - t^2", 4), ("t^3 + t^2 + t", 1)],
            &[
                (["t^3 - t^2", "t^3", "t^3"], 1),
                (["t^3", "t^3", "t^3"], 2),
                (["t^3 + t^2", "t^3 + t^2", "t^3"], 2),
                (["t^3 - t^2", "t^3", "t^3 - t^2 + t"], 1),
            ],
        ),
    ),
    (
        "addtl3",
        (
            &[("t^3 - 2t^2 + t", 1), ("t^3 - t^2", 1)],
            &[
                (["t^3 - t^2", "t^3 - t^2", "t^3 + t^2"], 1),
                (["t^3 - t^2", "t^3 + t^2", "t^3"], 2),
                (["t^3 + t^2", "t^3", "t^3"], 1),
                (["t^3", "t^3", "t^3"], 1),
                (["t^3 - t^2", "t^3 - t^2", "t^3 + 2t^2"], 1),
                (["t^3 + t^2", "t^3 + t^2", "t^3 - t^2 - t"], 1),
            ],
        ),
    ),
];
