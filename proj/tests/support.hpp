#ifndef IOCONF_TEST_SUPPORT_HPP
#define IOCONF_TEST_SUPPORT_HPP

#include "ioconf/conformance.hpp"
#include "ioconf/formula.hpp"
#include "ioconf/gsos.hpp"
#include "ioconf/lts.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ioconf::test {

std::string fixture_path(const std::string& name);
Lts load_fixture(const std::string& name, bool close_quiescence = false);
GsosLanguage load_gsos_fixture(const std::string& name);

// ---------------------------------------------------------------------------
// Independent oracles. These deliberately avoid the production algorithms:
// expected values in the tests are frozen from these, not from the code
// under test.
// ---------------------------------------------------------------------------

/// Conformance by definition: the union of all relations R with R a
/// conformance simulation, found by enumerating every relation over the
/// state space. Only feasible for <= 4 states.
StateRelation brute_iocos(const Lts& lts);

/// Trace-based conformance by definition, restricted to specification
/// traces of bounded length.
bool brute_ioco(const Lts& lts, StateId i, StateId s, int depth);

/// All satisfaction signatures (sets of satisfying states) of the
/// level-layered diamond-logic fragment up to the given modal depth and
/// conjunction width, with one representative formula per signature.
struct SignatureClosure {
    std::vector<StateSet> signatures;
    std::vector<FormulaPtr> representatives;

    /// A formula in the class with i |= phi and s |/= phi, if any.
    std::optional<FormulaPtr> separator(StateId i, StateId s) const;
};

SignatureClosure diamond_signatures(const Lts& lts, int depth, int width);

// ---------------------------------------------------------------------------
// Deterministic random instances
// ---------------------------------------------------------------------------

struct RandomLtsParams {
    int min_states = 2;
    int max_states = 4;
    int inputs = 2;            // |I|
    int extra_outputs = 1;     // outputs besides delta
    int max_fanout = 2;        // successors per (state, action)
    int percent_input_edge = 55;
    int percent_output_edge = 45;
    bool input_enabled = false;
    bool deterministic = false;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
    bool percent(int p) { return below(100) < p; }

private:
    std::mt19937_64 engine_;
};

/// Quiescence-coherent random LTS with states s0..s{n-1}.
Lts random_lts(Rng& rng, const RandomLtsParams& params);

/// Disjoint union of two systems over one alphabet; states are prefixed.
Lts disjoint_union(const Lts& a, const Lts& b, const std::string& prefix_a,
                   const std::string& prefix_b);

} // namespace ioconf::test

#endif
