// Command-line front end: list the model catalog, compute invariants of
// ad-hoc models, verify catalog entries against their reference invariants,
// and dump the catalog in canonical form.

#include "models.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace zl;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string tags_of(const models::ModelRecord& r) {
    std::string t;
    auto add = [&](const char* s) {
        if (!t.empty()) t += ",";
        t += s;
    };
    if (r.tagRestrictedSection) add("restricted-section");
    if (r.tagWeightedStoredOnly) add("weighted-stored-only");
    if (r.tagExtensionBundle) add("extension-bundle");
    return t.empty() ? "-" : t;
}

std::vector<models::ModelRecord> select_records(const std::string& file,
                                                const std::vector<std::string>& ids, bool all) {
    std::vector<models::ModelRecord> pool;
    if (!file.empty()) {
        pool = models::parse(read_input(file));
    } else {
        pool = models::catalog();
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const models::ModelRecord& a, const models::ModelRecord& b) {
                         if (a.id != b.id) return a.id < b.id;
                         return a.variant < b.variant;
                     });
    if (all || ids.empty()) return pool;
    std::vector<models::ModelRecord> out;
    for (const auto& id : ids) {
        bool hit = false;
        for (const auto& r : pool)
            if (r.id == id || r.id.rfind(id + "-", 0) == 0) {
                out.push_back(r);
                hit = true;
            }
        if (!hit) throw std::runtime_error("unknown id: " + id);
    }
    return out;
}

int cmd_list(const std::string& prefix, const std::string& format, const std::string& file) {
    std::vector<models::ModelRecord> pool;
    if (!file.empty()) pool = models::parse(read_input(file));
    else pool = models::catalog();
    std::vector<const models::ModelRecord*> sel;
    for (const auto& r : pool)
        if (prefix.empty() || r.id.rfind(prefix, 0) == 0) sel.push_back(&r);
    std::sort(sel.begin(), sel.end(), [](auto* a, auto* b) {
        if (a->id != b->id) return a->id < b->id;
        return a->variant < b->variant;
    });
    for (const auto* r : sel) {
        if (format == "machine") {
            std::cout << r->id << "\t" << r->variant << "\t" << models::print_space(r->space)
                      << "\t" << tags_of(*r) << "\n";
        } else {
            std::cout << r->id;
            if (r->variant) std::cout << " (alt " << r->variant << ")";
            std::cout << "  on " << models::print_space(r->space) << "  cut "
                      << models::print_bundle(r->bundle);
            std::string t = tags_of(*r);
            if (t != "-") std::cout << "  [" << t << "]";
            std::cout << "\n";
        }
    }
    int primaries = 0;
    for (const auto* r : sel)
        if (r->variant == 0) ++primaries;
    if (format != "machine")
        std::cout << sel.size() << " records (" << primaries << " primary)\n";
    return 0;
}

std::string ival_text(const koszul::Ival& iv) {
    if (iv.exact()) return iv.lb.str();
    return "[" + iv.lb.str() + "," + (iv.bounded() ? iv.ub.str() : std::string("inf")) + "]";
}

int cmd_invariants(const std::string& spaceStr, const std::string& bundleStr, int dimOpt,
                   bool fano, const std::string& format) {
    // reuse the record grammar for the two pieces
    std::string doc = "model x-0 on " + spaceStr + " cut " + bundleStr + ";";
    auto recs = models::parse(doc);
    const auto& r = recs.at(0);
    if (r.space.has_weighted()) throw std::runtime_error("weighted factors are stored-only");
    auto ctx = std::make_shared<bundles::Ctx>(r.space);
    bundles::ExprPtr F = r.bundle ? r.bundle : bundles::Expr::zero();
    auto pb = koszul::make_problem(ctx, F, fano);
    if (dimOpt >= 0 && pb.dimY != dimOpt)
        throw std::runtime_error("expected dimension " + std::to_string(dimOpt) + " but dim X - rank F = " +
                                 std::to_string(pb.dimY));
    const int d = pb.dimY;
    Int deg = chow::anticanonical_degree(*ctx, pb.F, d);
    Int chiK = koszul::h0_anticanonical(pb);
    auto tab = koszul::hodge_numbers(pb);
    auto tan = koszul::tangent_cohomology(pb);

    const char* sep = format == "machine" ? "\t" : " = ";
    std::cout << "dim" << sep << d << "\n";
    if (fano) std::cout << "h0(-K)" << sep << chiK << "\n";
    else std::cout << "chi(-K)" << sep << chiK << "\n";
    std::cout << "(-K)^" << d << sep << deg << "\n";
    for (int p = 0; p <= d; ++p) {
        std::cout << "hodge";
        if (format == "machine") std::cout << "\t" << p;
        else std::cout << " row " << p << ":";
        for (int q = 0; q <= d; ++q) std::cout << (format == "machine" ? "\t" : " ") << ival_text(tab.h[p][q]);
        std::cout << "\n";
    }
    if (!tab.constraintsUsed.empty()) {
        std::cout << "constraints";
        for (const auto& c : tab.constraintsUsed) std::cout << (format == "machine" ? "\t" : " ") << c;
        std::cout << "\n";
    }
    std::cout << "h0(TX|Y)" << sep << ival_text(tan.tangentRestricted.h[0]) << "\n";
    std::cout << "h0(F|Y)" << sep << ival_text(tan.bundleRestricted.h[0]) << "\n";
    std::cout << "h0(TY)" << sep << ival_text(tan.h0TY) << "\n";
    std::cout << "h1(TY)" << sep << ival_text(tan.h1TY) << "\n";
    if (tan.differenceExact)
        std::cout << "h1(TY)-h0(TY)" << sep << tan.difference << "\n";
    return 0;
}

int cmd_verify(const std::vector<std::string>& ids, bool all, int jobs, const std::string& format,
               const std::string& file) {
    auto recs = select_records(file, ids, all);
    if (recs.empty()) throw std::runtime_error("nothing to verify");
    std::vector<models::VerifyReport> reports(recs.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < recs.size(); i = next.fetch_add(1))
                reports[i] = models::verify(recs[i]);
        });
    for (auto& th : pool) th.join();

    bool anyFail = false;
    for (size_t i = 0; i < recs.size(); ++i) {
        const auto& rep = reports[i];
        std::string status;
        switch (rep.status) {
            case models::VerifyReport::Status::Pass: status = "PASS"; break;
            case models::VerifyReport::Status::Fail: status = "FAIL"; anyFail = true; break;
            case models::VerifyReport::Status::NotMachineVerifiable: status = "SKIPPED"; break;
        }
        if (format == "machine") {
            std::cout << rep.id << "\t" << rep.variant << "\t" << status;
            for (const auto& f : rep.fields) {
                std::cout << "\t" << f.name << "=" << f.computed;
                if (!f.expected.empty() && !f.pass) std::cout << "(want " << f.expected << ")";
            }
            if (rep.formal) std::cout << "\tformal";
            std::cout << "\n";
        } else {
            std::cout << status << "  " << rep.id;
            if (rep.variant) std::cout << " (alt " << rep.variant << ")";
            if (rep.status == models::VerifyReport::Status::NotMachineVerifiable)
                std::cout << "  weighted model, stored only";
            for (const auto& f : rep.fields) {
                std::cout << "  " << f.name << "=" << f.computed;
                if (!f.expected.empty() && !f.pass) std::cout << " (want " << f.expected << ")";
            }
            if (rep.formal) std::cout << "  [formal]";
            if (!rep.notPinched.empty()) {
                std::cout << "  intervals:";
                for (const auto& s : rep.notPinched) std::cout << " " << s;
            }
            if (!rep.error.empty()) std::cout << "  error: " << rep.error;
            std::cout << "\n";
        }
    }
    return anyFail ? 1 : 0;
}

int cmd_dump() {
    for (const auto& r : models::catalog()) std::cout << models::print_record(r) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of zero loci of homogeneous vector bundles on products of "
                 "Grassmannians and flag varieties"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list catalog records");
    std::string listPrefix, listFormat = "text", listFile;
    list->add_option("prefix", listPrefix, "id prefix filter");
    list->add_option("--format", listFormat, "text|machine")->check(CLI::IsMember({"text", "machine"}));
    list->add_option("--file", listFile, "read records from a DSL document ('-' for stdin)");

    auto* inv = app.add_subcommand("invariants", "compute invariants of an ad-hoc model");
    std::string invSpace, invBundle, invFormat = "text";
    int invDim = -1;
    bool invNoFano = false;
    inv->add_option("--space", invSpace, "ambient space, e.g. \"P(2) x Gr(2,4)\"")->required();
    inv->add_option("--bundle", invBundle, "bundle expression, e.g. \"dual(U2)(1,0)+O(0,2)\"")->required();
    inv->add_option("--dim", invDim, "expected dimension of the zero locus");
    inv->add_flag("--no-fano", invNoFano, "do not assume the zero locus is Fano");
    inv->add_option("--format", invFormat, "text|machine")->check(CLI::IsMember({"text", "machine"}));

    auto* ver = app.add_subcommand("verify", "verify catalog records");
    std::vector<std::string> verIds;
    bool verAll = false;
    int verJobs = 0;
    std::string verFormat = "text", verFile;
    ver->add_option("ids", verIds, "record ids (or prefixes like 2-16)");
    ver->add_flag("--all", verAll, "verify every record");
    ver->add_option("--jobs", verJobs, "worker count (default: env ZEROLOCUS_JOBS or cores)");
    ver->add_option("--format", verFormat, "text|machine")->check(CLI::IsMember({"text", "machine"}));
    ver->add_option("--file", verFile, "verify records from a DSL document ('-' for stdin)");

    auto* dump = app.add_subcommand("dump", "dump the embedded catalog in canonical form");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return cmd_list(listPrefix, listFormat, listFile);
        if (inv->parsed()) return cmd_invariants(invSpace, invBundle, invDim, !invNoFano, invFormat);
        if (ver->parsed()) {
            int jobs = verJobs;
            if (jobs <= 0) {
                if (const char* s = std::getenv("ZEROLOCUS_JOBS")) jobs = std::atoi(s);
                if (jobs <= 0) jobs = std::thread::hardware_concurrency();
                if (jobs <= 0) jobs = 4;
            }
            return cmd_verify(verIds, verAll, jobs, verFormat, verFile);
        }
        if (dump->parsed()) return cmd_dump();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
