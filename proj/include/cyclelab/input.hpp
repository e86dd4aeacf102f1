#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclelab/correspondences.hpp"
#include "cyclelab/ultraproduct.hpp"

namespace cyclelab {

struct NamedIdeal {
    std::string name;
    Ideal ideal;
};

struct NamedSpace {
    std::string name;
    VarietySpec variety;
};

struct CorrespondenceDecl {
    std::string name;
    std::string source, target;
    Ideal ideal;  // on product_ring({source, target})
};

/// Input file grammar, one statement per `;`:
///   ring Q[x, y];            affine ambient (or F7[x, y])
///   projective Q[x, y, z];   projective ambient
///   ideal [name] (f, g, ...);
///   target Q[x];             pushforward target, variables kept by name
///   space X Q[x] [(f, ...)]; affine space or subvariety for correspondences
///   correspondence [name] X -> Y (f, ...);
///   sentence: <formula>;
/// '#' comments run to end of line.
struct InputFile {
    std::optional<Ambient> ambient;
    std::vector<NamedIdeal> ideals;
    RingPtr target;
    std::vector<NamedSpace> spaces;
    std::vector<CorrespondenceDecl> correspondences;
    std::optional<Sentence> sentence;

    const NamedSpace& space(const std::string& name) const;
};

/// Throws ParseError with line/column, ValidationError naming the violated invariant.
InputFile parse_input(const std::string& text);
InputFile read_input(const std::string& path);

}  // namespace cyclelab
