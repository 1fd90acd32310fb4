#include "block_solver.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

#include "native_atoms.hpp"

namespace tl::detail {
namespace {

constexpr std::size_t kNodeLimit = 2'000'000;

class BlockSolver {
public:
    BlockSolver(const Model& m, const Team& x, const VarList& w, const EvalBudget& budget)
        : m_(m), x_(x), w_(w), budget_(budget) {
        names_ = x.vars();
        names_.insert(names_.end(), w.begin(), w.end());
        for (std::size_t i = 0; i < names_.size(); ++i) col_[names_[i]] = static_cast<int>(i);
    }

    bool run(const std::vector<Formula>& fo, const std::vector<Formula>& atoms);

private:
    enum : std::int8_t { Out = -1, Unk = 0, In = 1 };
    using State = std::vector<std::int8_t>;

    struct DepC {
        std::vector<std::uint64_t> ka, kb;
    };
    struct IncC {
        std::vector<std::uint64_t> ka;
        std::unordered_map<std::uint64_t, std::vector<int>> by_target;
    };
    struct IndC {
        std::vector<std::uint64_t> kz, kx, ky;
        std::uint64_t rx = 1, ry = 1;
        std::unordered_map<std::uint64_t, std::vector<int>> by_zxy;
        std::uint64_t key(std::uint64_t z, std::uint64_t x, std::uint64_t y) const { return (z * rx + x) * ry + y; }
    };

    const Model& m_;
    const Team& x_;
    const VarList& w_;
    const EvalBudget& budget_;
    VarList names_;
    std::map<std::string, int> col_;

    std::vector<Row> cand_;
    std::vector<std::vector<int>> by_base_;
    std::vector<DepC> deps_;
    std::vector<IncC> incs_;
    std::vector<IndC> inds_;
    std::size_t nodes_ = 0;

    std::vector<int> cols(const VarList& vs) const {
        std::vector<int> out;
        for (const auto& v : vs) {
            auto it = col_.find(v);
            if (it == col_.end()) throw LogicError("variable " + v + " is unbound in an existential block");
            out.push_back(it->second);
        }
        return out;
    }
    bool inside_x(const std::vector<int>& cs) const {
        for (int c : cs)
            if (c >= static_cast<int>(x_.vars().size())) return false;
        return true;
    }
    std::uint64_t range(std::size_t len) const {
        double r = std::pow(static_cast<double>(m_.size()), static_cast<double>(len));
        if (r > 9.0e15) throw BudgetExceeded("projection key space too large in existential block");
        return static_cast<std::uint64_t>(r);
    }
    std::uint64_t key(const Row& r, const std::vector<int>& cs) const {
        std::uint64_t k = 0;
        for (int c : cs) k = k * static_cast<std::uint64_t>(m_.size()) + static_cast<std::uint64_t>(r[c]);
        return k;
    }

    // Requirement lists (at least one member must be In) plus, per independence constraint, the (z, x) and (z, y)
    // projections that every completion of st must contain.
    struct Analysis {
        std::vector<const std::vector<int>*> lists;
        std::vector<std::map<std::uint64_t, std::pair<std::set<std::uint64_t>, std::set<std::uint64_t>>>> must;
    };
    void analyse(const State& st, Analysis& an) const;
    bool propagate(State& st) const;
    bool search(State st);
};

const std::vector<int> kNone;

void BlockSolver::analyse(const State& st, Analysis& an) const {
    an.lists.clear();
    an.must.assign(inds_.size(), {});
    std::vector<std::set<std::uint64_t>> inc_need(incs_.size());
    std::vector<std::set<std::uint64_t>> ind_done(inds_.size());
    auto need_inc = [&](std::size_t ci, std::uint64_t k) {
        if (!inc_need[ci].insert(k).second) return;
        auto it = incs_[ci].by_target.find(k);
        an.lists.push_back(it == incs_[ci].by_target.end() ? &kNone : &it->second);
    };
    for (const auto& b : by_base_) an.lists.push_back(&b);
    for (std::size_t r = 0; r < cand_.size(); ++r) {
        if (st[r] != In) continue;
        for (std::size_t ci = 0; ci < incs_.size(); ++ci) need_inc(ci, incs_[ci].ka[r]);
        for (std::size_t ii = 0; ii < inds_.size(); ++ii) {
            auto& e = an.must[ii][inds_[ii].kz[r]];
            e.first.insert(inds_[ii].kx[r]);
            e.second.insert(inds_[ii].ky[r]);
        }
    }
    std::size_t processed = 0;
    std::vector<int> alive;
    for (;;) {
        for (; processed < an.lists.size(); ++processed) {
            const auto& l = *an.lists[processed];
            alive.clear();
            bool met = false;
            for (int c : l) {
                if (st[c] == In) {
                    met = true;
                    break;
                }
                if (st[c] == Unk) alive.push_back(c);
            }
            if (met || alive.empty()) continue;
            auto agree = [&](const std::vector<std::uint64_t>& k) {
                for (int c : alive)
                    if (k[c] != k[alive[0]]) return false;
                return true;
            };
            for (std::size_t ci = 0; ci < incs_.size(); ++ci)
                if (agree(incs_[ci].ka)) need_inc(ci, incs_[ci].ka[alive[0]]);
            for (std::size_t ii = 0; ii < inds_.size(); ++ii) {
                const auto& c = inds_[ii];
                if (!agree(c.kz)) continue;
                if (agree(c.kx)) an.must[ii][c.kz[alive[0]]].first.insert(c.kx[alive[0]]);
                if (agree(c.ky)) an.must[ii][c.kz[alive[0]]].second.insert(c.ky[alive[0]]);
            }
        }
        for (std::size_t ii = 0; ii < inds_.size(); ++ii) {
            const auto& c = inds_[ii];
            for (const auto& [z, xy] : an.must[ii])
                for (auto xv : xy.first)
                    for (auto yv : xy.second) {
                        std::uint64_t k = c.key(z, xv, yv);
                        if (!ind_done[ii].insert(k).second) continue;
                        auto it = c.by_zxy.find(k);
                        an.lists.push_back(it == c.by_zxy.end() ? &kNone : &it->second);
                    }
        }
        if (processed == an.lists.size()) return;
    }
}

bool BlockSolver::propagate(State& st) const {
    Analysis an;
    auto all_out = [&](const std::vector<int>* l) {
        for (int c : *l)
            if (st[c] != Out) return false;
        return true;
    };
    for (;;) {
        bool changed = false;
        for (const auto& c : deps_) {
            std::unordered_map<std::uint64_t, std::uint64_t> f;
            for (std::size_t r = 0; r < cand_.size(); ++r)
                if (st[r] == In) {
                    auto [it, fresh] = f.emplace(c.ka[r], c.kb[r]);
                    if (!fresh && it->second != c.kb[r]) return false;
                }
            for (std::size_t r = 0; r < cand_.size(); ++r)
                if (st[r] == Unk) {
                    auto it = f.find(c.ka[r]);
                    if (it != f.end() && it->second != c.kb[r]) st[r] = Out, changed = true;
                }
        }
        for (const auto& c : incs_)
            for (std::size_t r = 0; r < cand_.size(); ++r)
                if (st[r] == Unk) {
                    auto it = c.by_target.find(c.ka[r]);
                    if (it == c.by_target.end() || all_out(&it->second)) st[r] = Out, changed = true;
                }
        analyse(st, an);
        for (std::size_t ii = 0; ii < inds_.size(); ++ii) {
            const auto& c = inds_[ii];
            auto missing = [&](std::uint64_t k) {
                auto it = c.by_zxy.find(k);
                return it == c.by_zxy.end() || all_out(&it->second);
            };
            for (std::size_t r = 0; r < cand_.size(); ++r) {
                if (st[r] != Unk) continue;
                auto it = an.must[ii].find(c.kz[r]);
                if (it == an.must[ii].end()) continue;
                bool dead = false;
                for (auto yv : it->second.second)
                    if (!dead && missing(c.key(c.kz[r], c.kx[r], yv))) dead = true;
                for (auto xv : it->second.first)
                    if (!dead && missing(c.key(c.kz[r], xv, c.ky[r]))) dead = true;
                if (dead) st[r] = Out, changed = true;
            }
        }
        for (const auto* l : an.lists) {
            int alive = 0, last = -1;
            bool met = false;
            for (int c : *l) {
                if (st[c] == In) {
                    met = true;
                    break;
                }
                if (st[c] == Unk) ++alive, last = c;
            }
            if (met) continue;
            if (alive == 0) return false;
            if (alive == 1) st[last] = In, changed = true;
        }
        if (!changed) return true;
    }
}

bool BlockSolver::search(State st) {
    Analysis an;
    for (;;) {
        if (++nodes_ > kNodeLimit) throw BudgetExceeded("existential block search exceeded its node budget");
        if (!propagate(st)) return false;
        analyse(st, an);
        const auto& reqs = an.lists;
        const std::vector<int>* best = nullptr;
        int best_alive = 0;
        for (const auto* l : reqs) {
            int alive = 0;
            bool met = false;
            for (int c : *l) {
                if (st[c] == In) {
                    met = true;
                    break;
                }
                if (st[c] == Unk) ++alive;
            }
            if (!met && (!best || alive < best_alive)) best = l, best_alive = alive;
        }
        if (!best) return true;
        int pick = -1;
        for (int c : *best)
            if (st[c] == Unk) {
                pick = c;
                break;
            }
        State child = st;
        child[pick] = In;
        if (search(std::move(child))) return true;
        st[pick] = Out;
    }
}

bool BlockSolver::run(const std::vector<Formula>& fo, const std::vector<Formula>& atoms) {
    if (x_.empty()) return true;
    std::vector<std::pair<std::vector<int>, std::set<Tuple>>> static_incs;
    std::vector<Formula> open;
    for (const auto& a : atoms) {
        if (a->op == Op::Top) continue;
        if (a->op == Op::Bot) return false;
        std::vector<int> ca = cols(a->a), cb = cols(a->b), cc = cols(a->c);
        if (inside_x(ca) && inside_x(cb) && inside_x(cc)) {
            bool ok = a->op == Op::Dep   ? native::dep_holds(x_.rows(), ca, cb)
                      : a->op == Op::Inc ? native::inc_holds(x_.rows(), ca, cb)
                                         : native::ind_holds(x_.rows(), ca, cb, cc);
            if (!ok) return false;
            continue;
        }
        if (a->op == Op::Inc && inside_x(cb)) {
            std::set<Tuple> targets;
            for (const auto& r : x_.rows()) targets.insert(native::project(r, cb));
            static_incs.emplace_back(ca, std::move(targets));
            continue;
        }
        open.push_back(a);
    }

    double total = static_cast<double>(x_.size()) *
                   std::pow(static_cast<double>(m_.size()), static_cast<double>(w_.size()));
    if (total > static_cast<double>(budget_.maxSupplementRows))
        throw BudgetExceeded("existential block ranges over " + std::to_string(static_cast<long long>(total)) +
                             " candidate rows, budget is " + std::to_string(budget_.maxSupplementRows));

    by_base_.assign(x_.size(), {});
    Assignment s;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const Row& base = x_.rows()[i];
        Row row = base;
        row.resize(names_.size(), 0);
        for (;;) {
            bool ok = true;
            for (const auto& [ca, targets] : static_incs)
                if (!targets.count(native::project(row, ca))) {
                    ok = false;
                    break;
                }
            if (ok && !fo.empty()) {
                for (std::size_t c = 0; c < names_.size(); ++c) s[names_[c]] = row[c];
                for (const auto& f : fo)
                    if (!eval_single(m_, s, f)) {
                        ok = false;
                        break;
                    }
            }
            if (ok) {
                by_base_[i].push_back(static_cast<int>(cand_.size()));
                cand_.push_back(row);
            }
            std::size_t c = names_.size();
            while (c > base.size() && ++row[c - 1] == m_.size()) row[--c] = 0;
            if (c == base.size()) break;
        }
        if (by_base_[i].empty()) return false;
    }

    for (const auto& a : open) {
        std::vector<int> ca = cols(a->a), cb = cols(a->b), cc = cols(a->c);
        if (a->op == Op::Dep) {
            DepC d;
            for (const auto& r : cand_) d.ka.push_back(key(r, ca)), d.kb.push_back(key(r, cb));
            deps_.push_back(std::move(d));
        } else if (a->op == Op::Inc) {
            IncC d;
            for (std::size_t r = 0; r < cand_.size(); ++r) {
                d.ka.push_back(key(cand_[r], ca));
                d.by_target[key(cand_[r], cb)].push_back(static_cast<int>(r));
            }
            incs_.push_back(std::move(d));
        } else {
            IndC d;
            d.rx = range(ca.size());
            d.ry = range(cc.size());
            range(ca.size() + cb.size() + cc.size());
            for (std::size_t r = 0; r < cand_.size(); ++r) {
                d.kx.push_back(key(cand_[r], ca));
                d.kz.push_back(key(cand_[r], cb));
                d.ky.push_back(key(cand_[r], cc));
                d.by_zxy[d.key(d.kz.back(), d.kx.back(), d.ky.back())].push_back(static_cast<int>(r));
            }
            inds_.push_back(std::move(d));
        }
    }
    return search(State(cand_.size(), Unk));
}

}  // namespace

bool solve_block(const Model& m, const Team& x, const VarList& w, const std::vector<Formula>& fo,
                 const std::vector<Formula>& atoms, const EvalBudget& budget) {
    BlockSolver s(m, x, w, budget);
    return s.run(fo, atoms);
}

}  // namespace tl::detail
