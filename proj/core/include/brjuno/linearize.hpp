#ifndef BRJUNO_LINEARIZE_HPP
#define BRJUNO_LINEARIZE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <brjuno/complex.hpp>
#include <brjuno/multi_index.hpp>
#include <brjuno/series.hpp>
#include <brjuno/spectrum.hpp>

namespace brjuno
{

// Diagonal system (lambda^Q - lambda_j) phi_(Q,j) = rhs_(Q,j) at one Q.
template <coefficient_field C>
struct homological_system {
    multi_index q;
    std::vector<C> divisors;
    std::vector<bool> resonant;
};

template <coefficient_field C>
homological_system<C> make_homological_system(const spectrum_spec &spec, const multi_index &q, unsigned bits);

// Nonzero right-hand side at a resonant slot; becomes a normal-form term.
template <coefficient_field C>
struct obstruction {
    multi_index q;
    std::size_t coordinate;
    C residue;
};

struct divisor_warning {
    multi_index q;
    std::size_t coordinate;
    double divisor;
    double bound;
};

struct growth_profile {
    // value[d] = max over |Q| = d of log(||phi_Q||) / d; 0 when no phi_Q of
    // degree d is nonzero. Entries 0 and 1 are unused.
    std::vector<double> value;
    double supremum = 0.0;
    // Profile rose by more than 0.5 per degree over the last five degrees.
    bool divergence_evidence = false;
};

enum class linearization_status { linearized_at_depth, obstructed };

template <coefficient_field C>
struct linearize_options {
    // Apply rescale_normalize to f first.
    bool normalize = false;
    // Value assigned to phi at a resonant slot; zero when empty or when it
    // returns nullopt.
    std::function<std::optional<C>(const multi_index &, std::size_t)> resonant_choice;
};

template <coefficient_field C>
struct linearization_result {
    // Includes the identity part.
    vector_series<C> phi;
    // Lambda plus the resonant residues.
    vector_series<C> normal_form;
    std::vector<obstruction<C>> obstructions;
    std::optional<normalization_info<C>> normalization;
    growth_profile growth;
    linearization_status status;
    std::vector<divisor_warning> warnings;
    // Largest zero threshold applied to resonant right-hand sides (0 in exact mode).
    double zero_threshold = 0.0;
};

// The linear map z -> Lambda z as a series.
template <coefficient_field C>
vector_series<C> linear_series(const spectrum_spec &spec, unsigned truncation, unsigned bits);

// Solves f o phi = phi o g degree by degree with g = Lambda + resonant terms.
// f must contain its linear part Lambda; the spectrum must be diagonal.
template <coefficient_field C>
linearization_result<C> formal_linearize(const vector_series<C> &f, const spectrum_spec &spec, unsigned truncation,
                                         const linearize_options<C> &options = {});

template <coefficient_field C>
struct normal_form_result {
    vector_series<C> g;
    vector_series<C> phi;
};

template <coefficient_field C>
normal_form_result<C> poincare_dulac_normal_form(const vector_series<C> &f, const spectrum_spec &spec,
                                                 unsigned truncation, const linearize_options<C> &options = {});

// max |coefficient of f o phi - phi o g| over 1 <= |Q| <= N.
template <coefficient_field C>
double verify_conjugacy(const vector_series<C> &f, const vector_series<C> &phi, const vector_series<C> &g,
                        unsigned truncation);

template <coefficient_field C>
struct support_split {
    vector_series<C> resonant;
    vector_series<C> non_resonant;
};

// Splits the nonlinear terms of s by whether (Q, j) is resonant. Linear
// terms belong to neither part.
template <coefficient_field C>
support_split<C> resonant_projection(const vector_series<C> &s, const spectrum_spec &spec);

template <coefficient_field C>
growth_profile growth_diagnostic(const vector_series<C> &phi);
template <coefficient_field C>
growth_profile growth_diagnostic(const linearization_result<C> &result);

// Compositional inverse of a series tangent to the identity.
template <coefficient_field C>
vector_series<C> inverse_series(const vector_series<C> &phi);

} // namespace brjuno

#endif
