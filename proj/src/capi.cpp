// Copyright 2026 The qnokey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnokey/qnokey.h"

#include <cstring>
#include <string>

#include "error.hpp"
#include "oracle.hpp"
#include "runner.hpp"

struct qnk_boolfn {
    qnokey::BooleanFunction f;
};

struct qnk_state {
    qnokey::QuantumState s;
};

struct qnk_result {
    std::string document;
    std::string summary;
    qnk_status status;
};

namespace {

thread_local std::string last_error;

qnk_status fail(qnk_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Maps the core's exception hierarchy onto status codes.
template <typename Fn>
qnk_status guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const qnokey::CheckFailure &e) {
        return fail(QNK_ERR_CHECK_FAILED, e.what());
    } catch (const qnokey::UsageError &e) {
        return fail(QNK_ERR_USAGE, e.what());
    } catch (const qnokey::Json::exception &e) {
        return fail(QNK_ERR_USAGE, std::string("malformed JSON: ") + e.what());
    } catch (const qnokey::InvariantViolation &e) {
        return fail(QNK_ERR_INTERNAL, std::string("internal invariant violated: ") + e.what());
    } catch (const std::exception &e) {
        return fail(QNK_ERR_INTERNAL, std::string("internal error: ") + e.what());
    } catch (...) {
        return fail(QNK_ERR_INTERNAL, "internal error");
    }
}

bool null_args(std::initializer_list<const void *> ptrs) {
    for (const void *p : ptrs) {
        if (p == nullptr) {
            last_error = "null argument";
            return true;
        }
    }
    return false;
}

qnk_status command(const char *text, qnk_result **out, bool verify, const char *name) {
    if (null_args({text, out})) {
        return QNK_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        const auto json = qnokey::Json::parse(text);
        const auto res = verify ? qnokey::verify_document(json) : qnokey::run_command(name, json);
        *out = new qnk_result{qnokey::canonical_dump(res.document), res.summary, static_cast<qnk_status>(res.status)};
        if (res.status != QNK_OK) {
            last_error = res.summary;
        }
        return static_cast<qnk_status>(res.status);
    });
}

}  // namespace

extern "C" {

const char *qnk_version(void) { return qnokey::kToolVersion; }

const char *qnk_last_error(void) { return last_error.c_str(); }

qnk_status qnk_boolfn_parse(const char *text, qnk_boolfn **out) {
    if (null_args({text, out})) {
        return QNK_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        *out = new qnk_boolfn{qnokey::parse_function(text)};
        return QNK_OK;
    });
}

qnk_status qnk_boolfn_random(unsigned k, unsigned n, uint64_t seed, qnk_boolfn **out) {
    if (null_args({out})) {
        return QNK_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        *out = new qnk_boolfn{qnokey::random_function(k, n, seed)};
        return QNK_OK;
    });
}

qnk_status qnk_boolfn_xor(const qnk_boolfn *f, const qnk_boolfn *g, qnk_boolfn **out) {
    if (null_args({f, g, out})) {
        return QNK_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        *out = new qnk_boolfn{qnokey::xor_functions(f->f, g->f)};
        return QNK_OK;
    });
}

qnk_status qnk_boolfn_eval(const qnk_boolfn *f, uint64_t input, uint32_t *out) {
    if (null_args({f, out})) {
        return QNK_ERR_USAGE;
    }
    if (input >= f->f.table().size()) {
        return fail(QNK_ERR_USAGE, "input out of range for the function arity");
    }
    *out = f->f(input);
    return QNK_OK;
}

qnk_status qnk_boolfn_is_permutation(const qnk_boolfn *f, int *out) {
    if (null_args({f, out})) {
        return QNK_ERR_USAGE;
    }
    const auto p = qnokey::is_permutation(f->f);
    *out = p ? static_cast<int>(*p) : -1;
    return QNK_OK;
}

qnk_status qnk_boolfn_to_string(const qnk_boolfn *f, char *buf, size_t cap, size_t *needed) {
    if (null_args({f, needed})) {
        return QNK_ERR_USAGE;
    }
    const std::string text = qnokey::serialize(f->f);
    *needed = text.size() + 1;
    if (buf != nullptr && cap >= *needed) {
        std::memcpy(buf, text.c_str(), *needed);
    }
    return QNK_OK;
}

void qnk_boolfn_free(qnk_boolfn *f) { delete f; }

qnk_status qnk_state_create(const char *const *names, const unsigned *widths, size_t n_registers,
                            const double *message, size_t message_len, qnk_state **out) {
    if (null_args({names, widths, message, out})) {
        return QNK_ERR_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        std::vector<qnokey::Register> regs;
        for (size_t i = 0; i < n_registers; ++i) {
            if (names[i] == nullptr) {
                throw qnokey::UsageError("null register name");
            }
            regs.push_back(qnokey::Register{names[i], widths[i]});
        }
        qnokey::RegisterLayout layout(std::move(regs));
        std::vector<qnokey::Complex> amps(message_len);
        for (size_t i = 0; i < message_len; ++i) {
            amps[i] = {message[2 * i], message[2 * i + 1]};
        }
        *out = new qnk_state{qnokey::make_state(layout, amps)};
        return QNK_OK;
    });
}

qnk_status qnk_state_apply_oracle(qnk_state *s, const qnk_boolfn *f, const char *source, const char *target) {
    if (null_args({s, f, source, target})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        s->s = qnokey::apply_oracle(s->s, f->f, source, target);
        return QNK_OK;
    });
}

qnk_status qnk_state_apply_hadamard(qnk_state *s, const char *reg) {
    if (null_args({s, reg})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        s->s = qnokey::apply_hadamard(s->s, reg);
        return QNK_OK;
    });
}

qnk_status qnk_state_attach(qnk_state *s, const char *name, unsigned width) {
    if (null_args({s, name})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        s->s = qnokey::attach_register(s->s, name, width);
        return QNK_OK;
    });
}

qnk_status qnk_state_detach(qnk_state *s, const char *name) {
    if (null_args({s, name})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        s->s = qnokey::detach_register(s->s, name);
        return QNK_OK;
    });
}

qnk_status qnk_state_zero_probability(const qnk_state *s, const char *reg, double *out) {
    if (null_args({s, reg, out})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        *out = qnokey::zero_probability(s->s, reg);
        return QNK_OK;
    });
}

qnk_status qnk_state_measure(qnk_state *s, const char *reg, uint64_t seed, uint64_t *value, double *probability) {
    if (null_args({s, reg, value, probability})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        auto m = qnokey::measure_register(s->s, reg, seed);
        *value = m.value.value;
        *probability = m.probability;
        s->s = std::move(m.post_state);
        return QNK_OK;
    });
}

qnk_status qnk_state_fidelity(const qnk_state *a, const qnk_state *b, double *out) {
    if (null_args({a, b, out})) {
        return QNK_ERR_USAGE;
    }
    return guarded([&] {
        *out = qnokey::fidelity(a->s, b->s);
        return QNK_OK;
    });
}

qnk_status qnk_state_dimension(const qnk_state *s, size_t *out) {
    if (null_args({s, out})) {
        return QNK_ERR_USAGE;
    }
    *out = s->s.dimension();
    return QNK_OK;
}

qnk_status qnk_state_amplitudes(const qnk_state *s, double *out, size_t cap) {
    if (null_args({s, out})) {
        return QNK_ERR_USAGE;
    }
    const auto &a = s->s.amplitudes();
    for (size_t i = 0; i < cap && i < a.size(); ++i) {
        out[2 * i] = a[i].real();
        out[2 * i + 1] = a[i].imag();
    }
    return QNK_OK;
}

void qnk_state_free(qnk_state *s) { delete s; }

qnk_status qnk_run(const char *request, qnk_result **out) { return command(request, out, false, "run"); }

qnk_status qnk_attack(const char *request, qnk_result **out) { return command(request, out, false, "attack"); }

qnk_status qnk_analyze(const char *request, qnk_result **out) { return command(request, out, false, "analyze"); }

qnk_status qnk_verify(const char *document, qnk_result **out) { return command(document, out, true, nullptr); }

const char *qnk_result_document(const qnk_result *r) { return r ? r->document.c_str() : ""; }

const char *qnk_result_summary(const qnk_result *r) { return r ? r->summary.c_str() : ""; }

qnk_status qnk_result_status(const qnk_result *r) { return r ? r->status : QNK_ERR_USAGE; }

void qnk_result_free(qnk_result *r) { delete r; }

}  // extern "C"
