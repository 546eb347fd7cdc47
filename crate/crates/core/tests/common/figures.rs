// Vertex points, weights and edges of the reference graphs.

pub struct Incidence {
    pub top: &'static [([i64; 3], usize)],
    pub bottom: &'static [([i64; 3], usize)],
    pub edges: &'static [([i64; 3], [i64; 3])],
}

pub struct Pairing {
    pub dashed: &'static [([i64; 3], [i64; 3])],
    pub groups: &'static [&'static [([i64; 3], [i64; 3])]],
}

pub const STANDARD3_INCIDENCE: Incidence = Incidence {
    top: &[([1, 0, 0], 9), ([0, 1, 0], 9), ([0, 0, 1], 9)],
    bottom: &[([1, 0, 0], 9), ([0, 1, 0], 9), ([0, 0, 1], 9)],
    edges: &[([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 1, 0])],
};

pub const STANDARD3_PAIRING: Pairing = Pairing {
    dashed: &[([1, 0, 0], [1, 0, 0]), ([0, 1, 0], [0, 1, 0]), ([0, 0, 1], [0, 0, 1])],
    groups: &[
        &[([0, 1, 0], [1, 0, 0]), ([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [1, 0, 0])],
        &[([0, 0, 1], [1, 0, 0]), ([1, 0, 0], [0, 0, 1]), ([1, 0, 0], [1, 0, 0])],
        &[([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 1, 0]), ([1, 0, 0], [0, 1, 0])],
        &[([0, 0, 1], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, 0])],
        &[([0, 1, 0], [1, 0, 0]), ([0, 0, 1], [0, 1, 0]), ([1, 0, 0], [0, 0, 1])],
        &[([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 0, 1]), ([1, 0, 0], [0, 0, 1])],
        &[([0, 0, 1], [0, 1, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [0, 1, 0])],
        &[([0, 0, 1], [0, 1, 0]), ([0, 0, 1], [0, 0, 1]), ([0, 1, 0], [0, 0, 1])],
    ],
};

pub const Z4Z3_INCIDENCE: Incidence = Incidence {
    top: &[([1, 0, 0], 3), ([0, 1, 0], 3), ([0, 0, 1], 3), ([1, 1, 0], 3), ([0, 1, 1], 3), ([1, 1, 1], 3)],
    bottom: &[([1, 0, 0], 4), ([0, 0, 1], 4), ([1, -1, 0], 4), ([0, 1, -1], 4), ([0, 1, 0], 1), ([1, 0, -1], 1)],
    edges: &[([1, 0, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, -1]), ([1, 0, 0], [0, 1, 0]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, -1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [1, -1, 0]), ([0, 0, 1], [0, 1, 0]), ([1, 1, 0], [0, 0, 1]), ([1, 1, 0], [1, -1, 0]), ([0, 1, 1], [1, 0, 0]), ([0, 1, 1], [0, 1, -1]), ([1, 1, 1], [1, -1, 0]), ([1, 1, 1], [0, 1, -1]), ([1, 1, 1], [1, 0, -1])],
};

pub const Z4Z3_PAIRING: Pairing = Pairing {
    dashed: &[([1, 1, 0], [0, 1, 0]), ([0, 1, 1], [1, 0, -1]), ([1, 0, 0], [1, 0, 0]), ([0, 1, 0], [1, -1, 0]), ([0, 0, 1], [0, 1, -1]), ([1, 1, 1], [0, 0, 1])],
    groups: &[
        &[([0, 1, 0], [0, 0, 1]), ([0, 1, 1], [0, 1, -1]), ([0, 0, 1], [1, -1, 0])],
        &[([0, 0, 1], [1, 0, 0]), ([1, 1, 0], [0, 0, 1]), ([1, 1, 1], [0, 1, -1])],
        &[([1, 1, 1], [1, -1, 0]), ([0, 1, 1], [1, 0, 0]), ([1, 0, 0], [0, 0, 1])],
        &[([1, 0, 0], [0, 1, -1]), ([1, 1, 0], [1, -1, 0]), ([0, 1, 0], [1, 0, 0])],
    ],
};

pub const LADER_Z3_INCIDENCE: Incidence = Incidence {
    top: &[([1, 0, 0], 5), ([0, 0, 1], 5), ([0, 1, 0], 3), ([1, 1, 0], 2), ([0, 1, -1], 2)],
    bottom: &[([1, 0, 0], 5), ([0, 0, 1], 5), ([0, 1, 0], 3), ([1, -1, 0], 2), ([0, 1, 1], 2)],
    edges: &[([1, 0, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 1, 1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 1, 0]), ([0, 0, 1], [1, -1, 0]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([1, 1, 0], [0, 0, 1]), ([1, 1, 0], [1, -1, 0]), ([0, 1, -1], [1, 0, 0]), ([0, 1, -1], [0, 1, 1])],
};

pub const LADER_Z3_PAIRING: Pairing = Pairing {
    dashed: &[([0, 1, 0], [0, 1, 0]), ([0, 0, 1], [0, 0, 1]), ([1, 1, 0], [1, 0, 0]), ([1, 0, 0], [1, -1, 0])],
    groups: &[
        &[([1, 0, 0], [1, 0, 0]), ([0, 0, 1], [1, 0, 0]), ([1, 0, 0], [0, 0, 1])],
        &[([1, 0, 0], [0, 1, 0]), ([0, 1, 0], [1, 0, 0])],
        &[([0, 0, 1], [0, 1, 0]), ([0, 1, 0], [0, 0, 1])],
        &[([0, 1, -1], [0, 0, 1]), ([1, 1, 0], [0, 0, 1]), ([0, 1, -1], [1, 0, 0])],
        &[([0, 0, 1], [0, 1, 1]), ([1, 0, 0], [0, 1, 1]), ([0, 0, 1], [1, -1, 0])],
    ],
};

pub const TWOFIX_Z3_INCIDENCE: Incidence = Incidence {
    top: &[([1, 0, 0], 4), ([0, 1, 0], 4), ([0, 0, 1], 4), ([1, 1, 1], 3), ([0, 1, 1], 2), ([1, 1, 0], 1)],
    bottom: &[([1, 0, 0], 4), ([0, 0, 1], 4), ([0, 1, -1], 4), ([1, -1, 0], 3), ([0, 1, 0], 2), ([1, 0, -1], 1)],
    edges: &[([1, 0, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, -1]), ([1, 0, 0], [0, 1, 0]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, -1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [1, -1, 0]), ([0, 0, 1], [0, 1, 0]), ([1, 1, 1], [0, 1, -1]), ([1, 1, 1], [1, -1, 0]), ([1, 1, 1], [1, 0, -1]), ([0, 1, 1], [1, 0, 0]), ([0, 1, 1], [0, 1, -1]), ([1, 1, 0], [0, 0, 1]), ([1, 1, 0], [1, -1, 0])],
};

pub const TWOFIX_Z3_PAIRING: Pairing = Pairing {
    dashed: &[([0, 1, 0], [0, 1, -1])],
    groups: &[
        &[([0, 1, 0], [1, 0, -1]), ([0, 1, 1], [0, 1, -1])],
        &[([1, 0, 0], [0, 1, -1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 0, 1])],
        &[([1, 1, 0], [1, 0, 0]), ([0, 0, 1], [0, 1, 0]), ([1, 0, 0], [0, 1, -1])],
        &[([1, 0, 0], [1, 0, 0]), ([0, 0, 1], [1, -1, 0]), ([1, 1, 1], [0, 0, 1])],
        &[([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [1, -1, 0]), ([1, 1, 1], [0, 1, 0])],
        &[([0, 1, 1], [0, 0, 1]), ([1, 0, 0], [1, -1, 0]), ([1, 1, 1], [1, 0, 0])],
    ],
};

pub const ADDTL1_INCIDENCE: Incidence = Incidence {
    top: &[([0, 0, 1], 4), ([0, 1, 1], 4), ([1, 0, 0], 3), ([0, 1, 0], 2), ([1, 1, 0], 1), ([1, 0, 1], 1), ([1, 1, 1], 1)],
    bottom: &[([1, 0, 0], 5), ([0, 1, 0], 3), ([0, 0, 1], 3), ([0, 1, -1], 3), ([1, 0, -1], 1), ([1, 1, -1], 1)],
    edges: &[([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 1, 0]), ([0, 1, 1], [1, 0, 0]), ([0, 1, 1], [0, 1, -1]), ([0, 1, 1], [1, 1, -1]), ([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, -1]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, -1]), ([1, 1, 0], [0, 0, 1]), ([1, 0, 1], [0, 1, 0]), ([1, 0, 1], [1, 0, -1]), ([1, 0, 1], [1, 1, -1]), ([1, 1, 1], [0, 1, -1]), ([1, 1, 1], [1, 0, -1])],
};

pub const ADDTL1_PAIRING: Pairing = Pairing {
    dashed: &[([0, 0, 1], [0, 1, -1]), ([1, 1, 0], [1, 0, 0]), ([0, 1, 1], [0, 1, 0])],
    groups: &[
        &[([0, 1, 0], [0, 0, 1]), ([0, 0, 1], [1, 0, 0]), ([1, 0, 0], [0, 1, -1])],
        &[([0, 1, 1], [0, 1, -1]), ([0, 0, 1], [0, 1, 0])],
        &[([0, 1, 1], [1, 1, -1]), ([1, 0, 0], [1, 0, -1]), ([0, 1, 1], [0, 0, 1])],
        &[([0, 0, 1], [1, 0, 0]), ([1, 0, 0], [1, 0, 0]), ([1, 1, 1], [0, 0, 1])],
        &[([1, 0, 1], [0, 1, 0]), ([0, 1, 0], [1, 0, 0])],
    ],
};

pub const ADDTL2_INCIDENCE: Incidence = Incidence {
    top: &[([0, 1, 0], 5), ([1, 0, 0], 3), ([1, 0, 1], 3), ([0, 0, 1], 2), ([0, 1, 1], 2), ([1, 1, 1], 1)],
    bottom: &[([1, 0, 0], 4), ([0, 0, 1], 4), ([0, 1, 0], 3), ([1, 0, -1], 2), ([0, 1, -1], 2), ([-1, 1, 1], 1)],
    edges: &[([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, -1]), ([1, 0, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 1, -1]), ([1, 0, 1], [0, 1, 0]), ([1, 0, 1], [1, 0, -1]), ([1, 0, 1], [-1, 1, 1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 1, 0]), ([0, 1, 1], [1, 0, 0]), ([0, 1, 1], [0, 1, -1]), ([1, 1, 1], [1, 0, -1]), ([1, 1, 1], [0, 1, -1])],
};

pub const ADDTL2_PAIRING: Pairing = Pairing {
    dashed: &[([0, 1, 0], [-1, 1, 1]), ([1, 0, 0], [1, 0, 0]), ([0, 0, 1], [0, 0, 1])],
    groups: &[
        &[([1, 0, 1], [1, 0, -1]), ([0, 1, 1], [0, 1, 0]), ([0, 1, 0], [0, 0, 1])],
        &[([1, 0, 0], [0, 1, -1]), ([0, 1, 0], [1, 0, -1])],
        &[([0, 1, 1], [1, 0, 0]), ([1, 0, 1], [1, 0, 0]), ([1, 1, 1], [0, 1, 0])],
        &[([0, 1, 0], [0, 0, 1]), ([1, 0, 1], [0, 1, -1]), ([0, 1, 0], [0, 1, 0])],
        &[([0, 0, 1], [1, 0, 0]), ([1, 0, 0], [0, 0, 1])],
    ],
};

pub const ADDTL3_INCIDENCE: Incidence = Incidence {
    top: &[([1, 0, 0], 5), ([0, 1, 0], 4), ([0, 0, 1], 4), ([0, 1, -1], 2), ([1, -1, 1], 2), ([1, 0, -1], 1)],
    bottom: &[([1, 0, 0], 5), ([0, 1, 0], 4), ([0, 1, 1], 4), ([0, 0, 1], 2), ([1, 0, 1], 2), ([1, 1, 0], 1)],
    edges: &[([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 1, 1]), ([1, 0, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, 1]), ([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [0, 1, 0]), ([0, 0, 1], [1, 1, 0]), ([0, 1, -1], [1, 0, 0]), ([0, 1, -1], [0, 1, 1]), ([1, -1, 1], [0, 1, 1]), ([1, -1, 1], [1, 1, 0]), ([1, 0, -1], [0, 1, 0]), ([1, 0, -1], [1, 0, 1])],
};

pub const ADDTL3_PAIRING: Pairing = Pairing {
    dashed: &[([1, 0, 0], [1, 0, 0])],
    groups: &[
        &[([0, 0, 1], [0, 0, 1]), ([0, 1, -1], [0, 1, 0]), ([0, 1, 0], [0, 1, 1])],
        &[([0, 1, 0], [1, 1, 0]), ([1, 0, 0], [1, 0, 1]), ([1, 0, 0], [0, 1, 0])],
        &[([0, 0, 1], [1, 0, 0]), ([1, 0, 0], [0, 1, 0]), ([0, 1, 0], [0, 1, 1])],
        &[([1, 0, 0], [0, 0, 1]), ([0, 1, -1], [1, 0, 0])],
        &[([1, 0, -1], [0, 1, 1]), ([0, 0, 1], [1, 0, 0]), ([1, -1, 1], [1, 0, 0])],
        &[([0, 0, 1], [0, 1, 1]), ([0, 1, 0], [0, 1, 0]), ([1, -1, 1], [1, 0, 1])],
    ],
};
