#include "procomp/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace procomp {

CompositionScheme CatalogEntry::scheme() const {
    if (kind == SchemeKind::processor)
        throw std::invalid_argument("entry '" + id + "' is a processor, not a composition");
    return CompositionScheme{id, half_alpha, order, effective_order, /*palindromic=*/true};
}

ProcessorScheme CatalogEntry::processor() const {
    if (kind != SchemeKind::processor)
        throw std::invalid_argument("entry '" + id + "' is not a processor");
    return ProcessorScheme{id, beta};
}

namespace {

std::vector<double> repeat(double value, int count, std::vector<double> tail) {
    std::vector<double> v(count, value);
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
}

std::map<std::string, CatalogEntry> build_catalog() {
    std::map<std::string, CatalogEntry> c;
    auto add = [&](CatalogEntry e) { c[e.id] = std::move(e); };

    // ---- standard symmetric compositions -------------------------------
    add({"BM6_4", SchemeKind::classic,
         {0.0792036964311957, 0.1303114101821663, 0.22286149586760773, -0.36671326904742574,
          0.32464818868970624, 0.10968847787674973},
         {}, 4, 4, "Blanes-Moan S6, Table 1"});
    add({"BM10_6", SchemeKind::classic,
         {0.0502627644003922, 0.0985536835006498, 0.31496061692769417, -0.44734648269547816,
          0.49242637248987586, -0.42511876779769087, 0.23706391397812188, 0.19560248860005314,
          0.34635818985072686, -0.36276277925434486},
         {}, 6, 6, "Blanes-Moan S10, Table 1"});

    // triple jump (Strang cubed); half-alpha in chi/chi* form is w/2 per Strang block
    {
        const double g = 1.0 / (2.0 - std::cbrt(2.0));
        add({"SS3_4", SchemeKind::classic, {g / 2, g / 2, (1.0 - 2.0 * g) / 2}, {}, 4, 4,
             "triple jump, eq. for S^[4]"});
    }
    // Suzuki fractal composition of five Strang blocks
    {
        const double g = 1.0 / (4.0 - std::cbrt(4.0));
        add({"SS5_4", SchemeKind::classic, {g / 2, g / 2, g / 2, g / 2, (1.0 - 4.0 * g) / 2}, {},
             4, 4, "Suzuki composition"});
    }

    // ---- kernels of effective order 4 (Table 4) -------------------------
    {
        // The repeated coefficient sits in the outer positions (1 and 3); the
        // published efficiency row (2.2753 / 2.5675 / 4.4048) singles out this
        // arrangement, not the triple-jump ordering.
        const double a1 = (2.0 + std::cbrt(2.0) + 1.0 / std::cbrt(2.0)) / 6.0;
        add({"PSI3_4", SchemeKind::kernel, {a1, 0.5 - 2.0 * a1, a1}, {}, 2, 4, "Table 4, s=3"});
    }
    add({"PSI4_4", SchemeKind::kernel,
         {0.32175, -0.46308, 0.3257797788491147633383644, 0.3155502211508852366616355},
         {}, 2, 4, "Table 4, s=4"});
    add({"PSI5_4", SchemeKind::kernel,
         {0.2014, 0.2014, 0.2136, -0.3294322555468400515907084, 0.2130322555468400515907084},
         {}, 2, 4, "Table 4, s=5"});
    add({"PSI6_4", SchemeKind::kernel,
         {0.15, 0.15, 0.14353, 0.1592, -0.26043191662780539180714124,
          0.1577019166278053918071412},
         {}, 2, 4, "Table 4, s=6"});
    add({"PSI7_4", SchemeKind::kernel,
         {0.1174, 0.1158, 0.1227, 0.112, 0.12685, -0.2177553177818524635432753,
          0.1230053177818524635432753},
         {}, 2, 4, "Table 4, s=7"});
    add({"PSI8_4", SchemeKind::kernel,
         repeat(0.09755, 4,
                {0.09, 0.1061, -0.1885819261107768579804613, 0.1022819261107768579804613}),
         {}, 2, 4, "Table 4, s=8"});
    add({"PSI9_4", SchemeKind::kernel,
         repeat(0.082576, 7, {-0.1668033908821750242843527, 0.08877139088217502428435271}),
         {}, 2, 4, "Table 4, s=9"});

    // ---- kernels of effective order 6 (Table 5) -------------------------
    add({"PSI5_6", SchemeKind::kernel,
         {1.1983882307745148, -1.0753056449710827, -1.0753056449710827, 0.7261115295838254,
          0.7261115295838252},
         {}, 2, 6, "Table 5, s=5"});
    add({"PSI6_6", SchemeKind::kernel,
         {0.3579656411737745366807624, 0.3041155195721355055671815, 0.3544845132692152058236740,
          -0.5776359154029903584192191, -0.6055964252788015563190656, 2.0 / 3.0},
         {}, 2, 6, "Table 5, s=6"});
    add({"PSI7_6", SchemeKind::kernel,
         {0.2, 0.2102, 0.2076682089468184822550893, 0.2483663566422618080555971,
          -0.4108957823061925870283283, -0.4330744093869198010728686,
          0.477735626104032097790510},
         {}, 2, 6, "Table 5, s=7"});
    add({"PSI8_6", SchemeKind::kernel,
         {0.1535, 0.146, 0.1535, 0.1564865138360775523331602, 0.1777546764340215024573463,
          -0.3260392072026447259933467, -0.3377852074639320941003920,
          0.376583224396477765303232},
         {}, 2, 6, "Table 5, s=8"});
    add({"PSI9_6", SchemeKind::kernel,
         {0.1145, 0.116, 0.117, 0.1115, 0.1319890385474291590082355,
          0.1512264299418584439400894, -0.2763628586973694504837428,
          -0.2840658003186325771164088, 0.318213190526714424651826},
         {}, 2, 6, "Table 5, s=9"});
    add({"PSI10_6", SchemeKind::kernel,
         repeat(0.100838384835000970361478569216, 7,
                {-0.238737866770265639777320334936, -0.238737866770265639777320334936,
                 0.271607039695524487024290685363}),
         {}, 2, 6, "Table 5, s=10"});
    add({"PSI11_6", SchemeKind::kernel,
         repeat(0.0852884432504611078508, 8,
                {-0.2116830704463290239945, -0.2116830704463290239945,
                 0.241058594888969185183038787789}),
         {}, 2, 6, "Table 5, s=11"});

    // ---- processed kernels from earlier work (Table 1.2) ----------------
    add({"BCM6_4", SchemeKind::kernel,
         repeat(0.1341940158122142, 4, {-0.3141940158122142, 0.27741795256335733}),
         {}, 2, 4, "Blanes-Casas-Murua P_64, Table 1.2"});
    add({"BCM9_6", SchemeKind::kernel,
         repeat(0.1106570871853300, 5,
                {-0.2854111127287940, 0.2138498496192465, -0.3402583791791715,
                 0.35853420636206895}),
         {}, 2, 6, "Blanes-Casas-Murua P_96, Table 1.2"});

    // ---- published processors (Appendix) ---------------------------------
    {
        CatalogEntry e;
        e.id = "PROC9_4";
        e.kind = SchemeKind::processor;
        e.beta = {-0.28566586026506785, 0.015761586550701766, -0.04362530065430363,
                  -0.03618407560045836, 0.05244978481197771, 0.28558661670075497,
                  0.011677248456395364};
        e.order = 4;
        e.effective_order = 4;
        e.source = "Appendix, pi^(9,4)";
        e.paired_kernel = "PSI9_4";
        add(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "PROC11_6";
        e.kind = SchemeKind::processor;
        e.beta = {0.2861698495034459,    0.4134261834337682,    0.10540576774873363,
                  -0.04664449698814812,  0.05672335497036459,   0.4990659695885505,
                  -0.3426195751795226,   0.3464936779661353,    -0.23813674914660654,
                  0.24491881441628852,   -0.49669544275221306,  -0.3122980257722082,
                  0.03146400131096136,   -0.030063016455253767, 0.31240611169589994,
                  -0.10319811497811636,  -0.42098894976942247,  -0.2839790222445134,
                  -0.039440980719714046, -0.020860135690795974, 0.05463728247473808,
                  -0.16673300456832169,  0.1509465011559501};
        e.order = 6;
        e.effective_order = 6;
        e.source = "Appendix, pi^(11,6)";
        e.paired_kernel = "PSI11_6";
        add(std::move(e));
    }
    return c;
}

std::map<std::string, CatalogEntry>& registry() {
    static std::map<std::string, CatalogEntry> reg = build_catalog();
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

const CatalogEntry& catalog_get(const std::string& id) {
    std::lock_guard lock(registry_mutex());
    auto& reg = registry();
    auto it = reg.find(id);
    if (it == reg.end()) {
        std::ostringstream msg;
        msg << "unknown method id '" << id << "'; valid ids:";
        for (const auto& [key, entry] : reg) msg << ' ' << key;
        throw std::out_of_range(msg.str());
    }
    return it->second;
}

bool catalog_has(const std::string& id) {
    std::lock_guard lock(registry_mutex());
    return registry().count(id) > 0;
}

std::vector<std::string> catalog_ids() {
    std::lock_guard lock(registry_mutex());
    std::vector<std::string> ids;
    for (const auto& [key, entry] : registry()) ids.push_back(key);
    return ids;
}

std::vector<std::string> catalog_load_external(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    const nlohmann::json& list = doc.is_array() ? doc : doc.at("schemes");

    std::vector<std::string> added;
    std::lock_guard lock(registry_mutex());
    for (const auto& item : list) {
        CatalogEntry e;
        e.id = item.at("id").get<std::string>();
        const std::string kind = item.value("kind", "classic");
        if (kind == "kernel")
            e.kind = SchemeKind::kernel;
        else if (kind == "processor")
            e.kind = SchemeKind::processor;
        else if (kind == "classic")
            e.kind = SchemeKind::classic;
        else
            throw std::runtime_error("unknown scheme kind '" + kind + "' in " + path);
        e.order = item.at("order").get<int>();
        e.effective_order = item.value("effective_order", e.order);
        e.source = item.value("source", "external file " + path);
        if (e.kind == SchemeKind::processor) {
            e.beta = item.at("beta").get<std::vector<double>>();
            e.paired_kernel = item.value("paired_kernel", "");
        } else {
            e.half_alpha = item.at("half_alpha").get<std::vector<double>>();
        }
        registry()[e.id] = e;
        added.push_back(e.id);
    }
    return added;
}

namespace {

EntryVerification verify_one(const CatalogEntry& entry) {
    EntryVerification v;
    v.id = entry.id;
    std::ostringstream detail;
    try {
        if (entry.kind == SchemeKind::processor) {
            const CatalogEntry& kernel = catalog_get(entry.paired_kernel);
            EffectiveOrderReport kr = kernel_report(kernel.scheme());
            ProcessorReport pr =
                processor_report(entry.processor(), kr.series, entry.effective_order);
            v.passed = pr.satisfied_order == entry.effective_order;
            if (!v.passed) {
                for (const auto& [name, r] : pr.condition_residuals)
                    if (std::abs(r) >= 1e-6) detail << name << "=" << r << ' ';
            } else {
                detail << "processor conditions vs " << entry.paired_kernel
                       << " satisfied, max residual " << pr.max_residual;
            }
        } else {
            EffectiveOrderReport rep = kernel_report(entry.scheme());
            if (entry.kind == SchemeKind::classic) {
                const int got = conventional_order(rep.series);
                v.passed = got == entry.order;
                detail << "conventional order " << got << " (claimed " << entry.order << ")";
            } else {
                v.passed = rep.effective_order == entry.effective_order;
                detail << "effective order " << rep.effective_order << " (claimed "
                       << entry.effective_order << ")";
            }
            if (!v.passed) {
                detail << "; residuals:";
                for (const auto& [name, r] : rep.condition_residuals)
                    detail << ' ' << name << "=" << r;
            }
        }
    } catch (const std::exception& err) {
        v.passed = false;
        detail << "exception: " << err.what();
    }
    v.detail = detail.str();
    return v;
}

}  // namespace

bool VerificationReport::all_passed() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const EntryVerification& e) { return e.passed; });
}

VerificationReport verify_all() {
    VerificationReport report;
    for (const std::string& id : catalog_ids()) report.entries.push_back(verify_one(catalog_get(id)));
    return report;
}

VerificationReport verify_entry(const std::string& id) {
    VerificationReport report;
    report.entries.push_back(verify_one(catalog_get(id)));
    return report;
}

}  // namespace procomp
