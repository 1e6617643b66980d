#ifndef AKMS_PRESETS_HPP
#define AKMS_PRESETS_HPP

#include <string>
#include <vector>

#include "akms/error.hpp"

// Figure presets: the parameter sets of the five reference curves families,
// embedded so the CLI works regardless of the working directory. The same
// documents ship as presets/fig*.json.

namespace akms::cli {

inline const char* kPresetFig1 = R"JSON({
  "description": "ASC versus main-link mean SNR for alpha in {1,2,3}; m_h=m_k=100, kappa_h=kappa_k=1, mu_h=mu_k=1, eve at 0 dB",
  "scenario": {
    "main": {"alpha": 2, "kappa": 1, "mu": 1, "m": 100, "mean_snr_db": 0},
    "eve":  {"alpha": 2, "kappa": 1, "mu": 1, "m": 100, "mean_snr_db": 0},
    "rate_target": 0
  },
  "sweep": {"variable": "gbar_h_db", "start": 0, "stop": 20, "step": 2},
  "curves": [
    {"label": "alpha=1", "overrides": {"alpha": 1}},
    {"label": "alpha=2", "overrides": {"alpha": 2}},
    {"label": "alpha=3", "overrides": {"alpha": 3}}
  ],
  "metrics": ["asc"],
  "series": {"max_terms": 20, "rel_tol": 1e-4, "hard_cap": 200},
  "sim": {"n_samples": 1000000, "seed": 1, "batch_size": 10000}
})JSON";

inline const char* kPresetFig2 = R"JSON({
  "description": "ASC versus main-link mean SNR for selected kappa_h/kappa_k; m_h=m_k=100, alpha=1, mu_h=mu_k=1, eve at 0 dB",
  "scenario": {
    "main": {"alpha": 1, "kappa": 1, "mu": 1, "m": 100, "mean_snr_db": 0},
    "eve":  {"alpha": 1, "kappa": 1, "mu": 1, "m": 100, "mean_snr_db": 0},
    "rate_target": 0
  },
  "sweep": {"variable": "gbar_h_db", "start": 0, "stop": 20, "step": 2},
  "curves": [
    {"label": "kh=0,kk=1", "overrides": {"kappa_h": 0, "kappa_k": 1}},
    {"label": "kh=1,kk=1", "overrides": {"kappa_h": 1, "kappa_k": 1}},
    {"label": "kh=5,kk=1", "overrides": {"kappa_h": 5, "kappa_k": 1}},
    {"label": "kh=1,kk=0", "overrides": {"kappa_h": 1, "kappa_k": 0}},
    {"label": "kh=1,kk=5", "overrides": {"kappa_h": 1, "kappa_k": 5}}
  ],
  "metrics": ["asc"],
  "series": {"max_terms": 20, "rel_tol": 1e-4, "hard_cap": 200},
  "sim": {"n_samples": 1000000, "seed": 1, "batch_size": 10000}
})JSON";

inline const char* kPresetFig3 = R"JSON({
  "description": "SOP versus main-link mean SNR for selected rate targets and eve SNRs; alpha=2, m_h=m_k=15, kappa_h=kappa_k=1, mu_h=mu_k=1",
  "scenario": {
    "main": {"alpha": 2, "kappa": 1, "mu": 1, "m": 15, "mean_snr_db": 10},
    "eve":  {"alpha": 2, "kappa": 1, "mu": 1, "m": 15, "mean_snr_db": 0},
    "rate_target": 0.5
  },
  "sweep": {"variable": "gbar_h_db", "start": 0, "stop": 30, "step": 5},
  "curves": [
    {"label": "Rt=0.5,gk=0dB", "overrides": {"rate_target": 0.5, "gbar_k_db": 0}},
    {"label": "Rt=0.5,gk=5dB", "overrides": {"rate_target": 0.5, "gbar_k_db": 5}},
    {"label": "Rt=1,gk=0dB",   "overrides": {"rate_target": 1,   "gbar_k_db": 0}},
    {"label": "Rt=1,gk=5dB",   "overrides": {"rate_target": 1,   "gbar_k_db": 5}}
  ],
  "metrics": ["sop_exact", "sop_numeric", "sop_asymptotic"],
  "series": {"max_terms": 20, "rel_tol": 1e-4, "hard_cap": 200},
  "sim": {"n_samples": 1000000, "seed": 1, "batch_size": 10000}
})JSON";

inline const char* kPresetFig4 = R"JSON({
  "description": "SPSC versus main-link mean SNR for selected mu_h/mu_k; alpha=2, m_h=m_k=15, kappa_h=kappa_k=1, eve at 0 dB",
  "scenario": {
    "main": {"alpha": 2, "kappa": 1, "mu": 1, "m": 15, "mean_snr_db": 10},
    "eve":  {"alpha": 2, "kappa": 1, "mu": 1, "m": 15, "mean_snr_db": 0},
    "rate_target": 0
  },
  "sweep": {"variable": "gbar_h_db", "start": 0, "stop": 30, "step": 5},
  "curves": [
    {"label": "muh=1,muk=1", "overrides": {"mu_h": 1, "mu_k": 1}},
    {"label": "muh=2,muk=1", "overrides": {"mu_h": 2, "mu_k": 1}},
    {"label": "muh=3,muk=1", "overrides": {"mu_h": 3, "mu_k": 1}},
    {"label": "muh=1,muk=2", "overrides": {"mu_h": 1, "mu_k": 2}},
    {"label": "muh=1,muk=3", "overrides": {"mu_h": 1, "mu_k": 3}}
  ],
  "metrics": ["spsc"],
  "series": {"max_terms": 20, "rel_tol": 1e-4, "hard_cap": 200},
  "sim": {"n_samples": 1000000, "seed": 1, "batch_size": 10000}
})JSON";

inline const char* kPresetFig5 = R"JSON({
  "description": "SOP versus main-link mean SNR for selected m_h/m_k; alpha=2, kappa_h=kappa_k=1, mu_h=mu_k=1, Rt=0.5 bits/s/Hz, eve at 0 dB",
  "scenario": {
    "main": {"alpha": 2, "kappa": 1, "mu": 1, "m": 5, "mean_snr_db": 10},
    "eve":  {"alpha": 2, "kappa": 1, "mu": 1, "m": 5, "mean_snr_db": 0},
    "rate_target": 0.5
  },
  "sweep": {"variable": "gbar_h_db", "start": 0, "stop": 30, "step": 5},
  "curves": [
    {"label": "mh=0.5,mk=5", "overrides": {"m_h": 0.5, "m_k": 5}},
    {"label": "mh=5,mk=5",   "overrides": {"m_h": 5,   "m_k": 5}},
    {"label": "mh=50,mk=5",  "overrides": {"m_h": 50,  "m_k": 5}},
    {"label": "mh=5,mk=0.5", "overrides": {"m_h": 5,   "m_k": 0.5}},
    {"label": "mh=5,mk=50",  "overrides": {"m_h": 5,   "m_k": 50}}
  ],
  "metrics": ["sop_exact", "sop_numeric", "sop_asymptotic"],
  "series": {"max_terms": 20, "rel_tol": 1e-4, "hard_cap": 200},
  "sim": {"n_samples": 1000000, "seed": 1, "batch_size": 10000}
})JSON";

inline std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5"}; }

inline std::string preset_json(const std::string& name) {
    if (name == "fig1") return kPresetFig1;
    if (name == "fig2") return kPresetFig2;
    if (name == "fig3") return kPresetFig3;
    if (name == "fig4") return kPresetFig4;
    if (name == "fig5") return kPresetFig5;
    throw domain_error("unknown preset '" + name + "' (available: fig1..fig5)");
}

} // namespace akms::cli

#endif
