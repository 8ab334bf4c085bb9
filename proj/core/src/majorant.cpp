#include <brjuno/majorant.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include <brjuno/error.hpp>
#include <brjuno/linearize.hpp>

namespace brjuno
{

std::vector<mpz_class> alpha_sequence(unsigned truncation)
{
    if (truncation < 1) {
        throw error(error_code::degree_out_of_range, "alpha sequence needs N >= 1");
    }
    // comp[m] = sum over compositions of m (any number of parts) of the alpha products.
    std::vector<mpz_class> alpha(truncation + 1, 0);
    std::vector<mpz_class> comp(truncation + 1, 0);
    alpha[1] = 1;
    comp[1] = 1;
    for (unsigned m = 2; m <= truncation; ++m) {
        mpz_class two_or_more = 0;
        for (unsigned first = 1; first < m; ++first) {
            two_or_more += alpha[first] * comp[m - first];
        }
        alpha[m] = two_or_more;
        comp[m] = alpha[m] + two_or_more;
    }
    return alpha;
}

std::vector<big_float> alpha_closed_form_coeffs(unsigned truncation, unsigned bits)
{
    if (truncation < 1) {
        throw error(error_code::degree_out_of_range, "alpha closed form needs N >= 1");
    }
    const unsigned top = truncation;
    // w = 1 - 8t/(1+t)^2 = 1 - 8 sum_{k>=1} (-1)^(k-1) k t^k
    std::vector<big_float> w(top + 1, big_float(bits));
    w[0] = big_float(1L, bits);
    for (unsigned k = 1; k <= top; ++k) {
        const long sign = (k % 2 == 1) ? -1 : 1;
        w[k] = big_float(sign * 8L * static_cast<long>(k), bits);
    }
    // s = sqrt(w), s_0 = 1
    std::vector<big_float> s(top + 1, big_float(bits));
    s[0] = big_float(1L, bits);
    for (unsigned k = 1; k <= top; ++k) {
        big_float acc = w[k];
        for (unsigned i = 1; i < k; ++i) {
            acc -= s[i] * s[k - i];
        }
        s[k] = acc / big_float(2L, bits);
    }
    // alpha = (1 + t)/4 * (1 - s)
    std::vector<big_float> out(top + 1, big_float(bits));
    const big_float four(4L, bits);
    for (unsigned k = 1; k <= top; ++k) {
        const big_float h = -s[k];
        const big_float h_prev = k == 1 ? big_float(bits) : -s[k - 1];
        out[k] = (h + h_prev) / four;
    }
    return out;
}

theta_info theta_constant(const spectrum_spec &spec, unsigned bits)
{
    big_float lo = spec.modulus(0, bits);
    big_float hi = lo;
    for (std::size_t h = 1; h < spec.dimension(); ++h) {
        const big_float r = spec.modulus(h, bits);
        lo = min(lo, r);
        hi = max(hi, r);
    }
    const big_float one(1L, bits);
    const big_float four(4L, bits);
    if (lo <= one) {
        return {lo / four, lo, false};
    }
    const big_float inv_min = one / hi;
    return {inv_min / four, inv_min, true};
}

big_float majorant_table::delta_of(const multi_index &q) const
{
    if (q.degree() == 1) {
        return big_float(1L, theta.theta.precision());
    }
    auto it = delta.find(q);
    if (it == delta.end()) {
        if (std::find(skipped.begin(), skipped.end(), q) != skipped.end()) {
            throw error(error_code::no_nonresonant_coordinate, q.to_string() + " is resonant in every coordinate");
        }
        throw error(error_code::invalid_argument, "delta is not defined for " + q.to_string());
    }
    return it->second.value;
}

namespace
{

struct partial_best {
    big_float value;
    std::vector<multi_index> parts;
};

class partition_solver
{
public:
    partition_solver(const majorant_table &table, std::size_t n, unsigned bits)
        : m_table(table), m_all(indices_up_to(n, 1, table.truncation)), m_bits(bits),
          m_tie(pow(big_float(2L, bits), -static_cast<long>(bits) + 16) + big_float(1L, bits))
    {
    }

    // Max of delta_L1 * ... * delta_Lk over multisets {L_i} summing to r
    // with every part <= bound in graded-lex order.
    const std::optional<partial_best> &best(const multi_index &r, const multi_index &bound_in)
    {
        const multi_index &bound = bound_in.degree() > r.degree() ? r : bound_in;
        const auto key = std::make_pair(r, bound);
        if (auto it = m_memo.find(key); it != m_memo.end()) {
            return it->second;
        }
        std::optional<partial_best> out;
        for (const auto &l : m_all) {
            if (bound < l) {
                break;
            }
            if (!l.divides(r) || !admissible(l)) {
                continue;
            }
            std::optional<partial_best> candidate;
            if (l == r) {
                candidate = partial_best{m_table.delta_of(l), {l}};
            } else {
                const auto &rest = best(r - l, l);
                if (!rest) {
                    continue;
                }
                candidate = partial_best{m_table.delta_of(l) * rest->value, {l}};
                candidate->parts.insert(candidate->parts.end(), rest->parts.begin(), rest->parts.end());
            }
            if (!out || candidate->value > out->value * m_tie) {
                out = std::move(candidate);
            }
        }
        return m_memo.emplace(key, std::move(out)).first->second;
    }

    // Max over decompositions of q into at least two parts.
    std::optional<partial_best> split(const multi_index &q)
    {
        std::optional<partial_best> out;
        for (const auto &l : m_all) {
            if (l.degree() >= q.degree()) {
                break;
            }
            if (!l.divides(q) || !admissible(l)) {
                continue;
            }
            const auto &rest = best(q - l, l);
            if (!rest) {
                continue;
            }
            partial_best candidate{m_table.delta_of(l) * rest->value, {l}};
            candidate.parts.insert(candidate.parts.end(), rest->parts.begin(), rest->parts.end());
            if (!out || candidate.value > out->value * m_tie) {
                out = std::move(candidate);
            }
        }
        return out;
    }

private:
    bool admissible(const multi_index &l) const
    {
        return l.degree() == 1 || m_table.delta.contains(l);
    }

    const majorant_table &m_table;
    std::vector<multi_index> m_all;
    unsigned m_bits;
    // Values within this relative factor count as ties; the earlier (smaller)
    // part sequence wins.
    big_float m_tie;
    std::map<std::pair<multi_index, multi_index>, std::optional<partial_best>> m_memo;
};

} // namespace

majorant_table delta_table(const spectrum_spec &spec, unsigned truncation, unsigned bits)
{
    if (!spec.is_diagonal()) {
        throw error(error_code::not_diagonalizable, "delta table needs a diagonal linear part");
    }
    if (spec.dimension() > majorant_table::max_dimension || truncation > majorant_table::max_truncation) {
        throw error(error_code::capacity_exceeded,
                    "delta table is limited to n <= " + std::to_string(majorant_table::max_dimension) + " and N <= "
                        + std::to_string(majorant_table::max_truncation));
    }
    if (truncation < 2) {
        throw error(error_code::degree_out_of_range, "delta table needs N >= 2");
    }
    majorant_table table{truncation,
                         alpha_sequence(truncation),
                         theta_constant(spec, bits),
                         make_divisor_table(spec, truncation, bits),
                         {},
                         {}};
    table.skipped = table.divisors.fully_resonant;
    partition_solver solver(table, spec.dimension(), bits);
    const big_float one(1L, bits);
    for (unsigned d = 2; d <= truncation; ++d) {
        for (const auto &q : indices_of_degree(spec.dimension(), d)) {
            auto eps = table.divisors.eps.find(q);
            if (eps == table.divisors.eps.end()) {
                continue;
            }
            auto best = solver.split(q);
            if (!best) {
                continue;
            }
            table.delta.emplace(q, delta_entry{one / eps->second.eps * best->value, std::move(best->parts)});
        }
    }
    return table;
}

decomposition_tree flatten_decomposition(const majorant_table &table, const multi_index &q)
{
    if (!table.delta.contains(q)) {
        throw error(error_code::invalid_argument, "no delta entry for " + q.to_string());
    }
    decomposition_tree tree{q, {}, {}};
    std::deque<multi_index> pending{q};
    while (!pending.empty()) {
        multi_index l = std::move(pending.front());
        pending.pop_front();
        const auto &entry = table.delta.at(l);
        tree.nodes.emplace_back(l, entry.parts);
        tree.factors.push_back(l);
        for (const auto &part : entry.parts) {
            if (part.degree() >= 2) {
                pending.push_back(part);
            }
        }
    }
    std::stable_sort(tree.factors.begin() + 1, tree.factors.end(),
                     [](const multi_index &a, const multi_index &b) { return a.degree() > b.degree(); });
    return tree;
}

namespace
{

big_float small_threshold(const majorant_table &table, unsigned m)
{
    if (m < 2 || m > table.truncation) {
        throw error(error_code::degree_out_of_range,
                    "m must lie in 2.." + std::to_string(table.truncation) + " for this table");
    }
    return table.theta.theta * table.divisors.omega_tilde[m];
}

} // namespace

std::size_t count_small_factors(const decomposition_tree &tree, const majorant_table &table, unsigned m,
                                std::size_t j)
{
    const big_float threshold = small_threshold(table, m);
    std::size_t count = 0;
    for (const auto &l : tree.factors) {
        const auto &e = table.divisors.eps.at(l);
        if (e.eps < threshold && e.index == j) {
            ++count;
        }
    }
    return count;
}

double lemma_bound(std::uint64_t degree, unsigned m)
{
    if (degree <= m) {
        return 0.0;
    }
    return 2.0 * static_cast<double>(degree) / static_cast<double>(m) - 1.0;
}

bool check_lemma_bound(std::size_t count, std::uint64_t degree, unsigned m)
{
    if (degree <= m) {
        return count == 0;
    }
    // count <= 2|Q|/m - 1  <=>  m (count + 1) <= 2|Q|, exactly in integers.
    return static_cast<std::uint64_t>(m) * (count + 1) <= 2 * degree;
}

std::vector<lemma_row> lemma_bound_report(const majorant_table &table, unsigned m)
{
    std::vector<lemma_row> rows;
    const std::size_t n = table.divisors.eps.empty() ? 0 : table.divisors.eps.begin()->first.dimension();
    for (const auto &[q, entry] : table.delta) {
        const auto tree = flatten_decomposition(table, q);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t count = count_small_factors(tree, table, m, j);
            const bool ok = check_lemma_bound(count, q.degree(), m) && tree.factors.size() <= 2 * q.degree() - 1;
            rows.push_back({q, m, j, count, lemma_bound(q.degree(), m), tree.factors.size(), ok});
        }
    }
    return rows;
}

std::vector<gap_violation> gap_lemma_check(const majorant_table &table, unsigned m)
{
    const big_float threshold = small_threshold(table, m);
    std::vector<multi_index> small;
    for (const auto &[q, entry] : table.delta) {
        if (table.divisors.eps.at(q).eps < threshold) {
            small.push_back(q);
        }
    }
    auto admissible = [&](const multi_index &l) { return l.degree() == 1 || table.divisors.eps.contains(l); };
    std::vector<gap_violation> out;
    for (const auto &q : small) {
        for (const auto &q1 : small) {
            if (q1 == q || !q1.divides(q)) {
                continue;
            }
            if (table.divisors.eps.at(q).index != table.divisors.eps.at(q1).index || !admissible(q - q1)) {
                continue;
            }
            if (q.degree() - q1.degree() < m) {
                out.push_back({q, q1});
            }
        }
    }
    return out;
}

template <coefficient_field C>
dominance_report majorant_dominance_report(const vector_series<C> &f, const spectrum_spec &spec, unsigned truncation)
{
    const unsigned bits = big_float::default_bits;
    const big_float one(1L, bits);
    for (const auto &[l, v] : f.terms()) {
        if (l.degree() >= 2 && max_norm(v, bits) > one) {
            throw error(error_code::precondition_failed,
                        "dominance needs ||f_L|| <= 1 (apply rescale_normalize first); fails at " + l.to_string());
        }
    }
    const auto result = formal_linearize(f, spec, truncation);
    if (result.status == linearization_status::obstructed) {
        throw error(error_code::obstructed, "dominance applies to formally linearizable germs only");
    }
    const auto table = delta_table(spec, truncation, bits);
    const big_float slack = one + pow(big_float(2L, bits), -64);
    dominance_report report{{}, true};
    for (const auto &[q, entry] : table.delta) {
        const auto *v = result.phi.find(q);
        const big_float norm = v == nullptr ? big_float(bits) : max_norm(*v, bits);
        const big_float bound = big_float(table.alpha[q.degree()], bits) * entry.value;
        const bool ok = norm <= bound * slack;
        report.rows.push_back({q, norm.to_double(), bound.to_double(), ok});
        report.all_pass = report.all_pass && ok;
    }
    return report;
}

template dominance_report majorant_dominance_report<exact_complex>(const vector_series<exact_complex> &,
                                                                   const spectrum_spec &, unsigned);
template dominance_report majorant_dominance_report<double_complex>(const vector_series<double_complex> &,
                                                                    const spectrum_spec &, unsigned);
template dominance_report majorant_dominance_report<mp_complex>(const vector_series<mp_complex> &,
                                                                const spectrum_spec &, unsigned);

growth_bound_check brjuno_estimate(const majorant_table &table, const spectrum_spec &spec, const p_sequence &p)
{
    const unsigned top = table.truncation;
    const unsigned bits = table.theta.theta.precision();
    growth_bound_check out{0.0, 0.0, -log(table.theta.theta).to_double(), 0.0, 0.0, multi_index(spec.dimension()), 0, true};
    for (std::size_t nu = 0; nu < p.values.size() && p.values[nu] < top; ++nu) {
        if (nu + 1 >= p.values.size()) {
            throw error(error_code::invalid_argument, "p-sequence too short for truncation " + std::to_string(top));
        }
        const auto next = p.values[nu + 1];
        const big_float w = next <= top ? table.divisors.omega_tilde[next]
                                        : omega_tilde(spec, static_cast<unsigned>(next), bits);
        const double pv = static_cast<double>(p.values[nu]);
        if (w.is_finite()) {
            out.brjuno_sum += -log(w).to_double() / pv;
        }
        out.reciprocal_sum += 1.0 / pv;
        ++out.terms;
    }
    const double n = static_cast<double>(spec.dimension());
    out.bound = 2.0 * n * (out.brjuno_sum + out.log_inv_theta * out.reciprocal_sum);
    bool first = true;
    for (const auto &[q, entry] : table.delta) {
        const double v = log(entry.value).to_double() / static_cast<double>(q.degree());
        if (first || v > out.observed_max) {
            out.observed_max = v;
            out.observed_argmax = q;
            first = false;
        }
    }
    out.holds = out.observed_max <= out.bound;
    return out;
}

} // namespace brjuno
