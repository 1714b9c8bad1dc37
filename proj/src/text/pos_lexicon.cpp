#include "kgsec/text/pos_lexicon.hpp"

#include "kgsec/text/tokenize.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_map>

namespace kgsec::text {

namespace {

// Ambiguous words are listed once under their most frequent role in
// configuration and security prose.

constexpr const char* kPronouns = R"(
i me my mine myself we us our ours ourselves you your yours yourself yourselves he him his
himself she her hers herself it its itself they them their theirs themselves who whom whose
someone somebody something anyone anybody anything everyone everybody everything nobody
nothing none one oneself whoever whatever whichever
)";

constexpr const char* kFunctionWords = R"(
a an the this that these those and or but nor so yet for of to in on at by with from into
onto upon about above below over under between among through during before after since
until while if unless because although though whereas whether than as via per within without
across along around behind beyond toward towards against despite except throughout
is am are was were be been being do does did doing have has had having can could may might
must shall should will would not no yes what which where when why how there here each every
either neither both all any some few many much more most less least several such own same
other another else etc e.g i.e vs cf
)";

constexpr const char* kNouns = R"(
access account action actor address admin administrator admission advisory agent alert
algorithm annotation announcement api application architecture argument article asset
attack attacker attribute audit auth authentication authorization authority backend backup
bandwidth baseline benchmark binary blog body boundary bucket bug build bundle cache
capability certificate chain change channel check cluster code command component compliance
config configuration connection console container content context control controller
cookie copy count credential cron cve daemon dashboard data database deployment default
denial description design detail developer device directory disk distribution docker
document documentation domain driver endpoint engine entry environment error event example
exception execution exploit exposure extension failure feature field file filesystem
firewall flag folder format framework function gateway goal group guide guideline handler
hardening header health host hostname hub identity image impact incident information
infrastructure ingress input installation instance integrity interface internet issue job
key kernel kubelet label layer level library limit line link list listener load location
log logging machine manager manifest master memory message metadata method metric mode
model module namespace network networking node number object operator option orchestrator
organization output owner package page parameter password patch path permission persistence
pipeline platform plugin pod policy port practice pressure principal privilege problem
process profile profiling program project protocol provider proxy quota rate reason record
registry release replica report repository request requirement resource response result
risk role root rule runtime scanner schedule scheduler scheme scope script secret section
security selector sentence server service session setting severity shell signature site
size socket software source space specification stack standard state statement status
step storage stream string subnet system table tag target task team technique template
tenant test text threat time token tool traffic transport tree trust tutorial type upgrade
url usage user utility value variable vendor version volume vulnerability web webhook
website whitepaper window work workload world zone article paper today week year day
article team kubernetes azure vmware rbac tls ssl http https dns ip cpu gpu ram ssh
)";

constexpr const char* kVerbs = R"(
accept access add adjust allow apply assign audit authenticate authorize avoid block
bind build call change check choose collect compile configure confirm connect consider
contain control copy create debug decide define delete deny deploy describe detect
determine disable discover download drop edit emit enable encrypt enforce ensure establish
evaluate execute expose extract fail fetch find fix follow force generate get give grant
guarantee handle harden help hide identify implement include increase inject inspect
install integrate isolate keep know launch learn leave let limit list listen load locate
lock log look maintain make manage map match migrate modify monitor mount move need note
obtain open operate override pass patch perform permit pick place plan prevent protect
provide publish pull push put query reach read receive recommend reduce refer register
reject release remain remove rename replace report require reset resolve restart restrict
restrict retain return review revoke rotate run save scan schedule see select send serve
set share show sign specify start steal stop store submit supply support switch take
tell terminate test track transfer trigger trust turn understand update upgrade upload use
validate verify view want watch write reboot mitigate escalate exploit compromise leak
gain mount bypass abuse affect cause become seem appear contain
)";

constexpr const char* kAdjectives = R"(
able active additional administrative anonymous available bad basic best big broad
careful central certain clear common complete compliant complex correct critical current
custom dangerous default different difficult direct due dynamic easy effective empty
enabled disabled encrypted entire essential exact excessive existing explicit exposed
external false fine first fixed full general given global good great hard harmful high
hostile important insecure internal invalid key large last late least legitimate limited
little local long low main major malicious manual many minimal minor misconfigured
mutual necessary new next normal old only open optional other particular persistent
possible potential powerful previous primary private privileged proper public random
read-only real recent related relevant remote required restricted right robust safe secure
sensitive separate serious several short significant similar simple single small specific
stable static strict strong subject sufficient suitable true trusted typical unauthorized
unnecessary unknown unprivileged unsafe untrusted up-to-date useful valid various vulnerable
weak whole wide writable wrong
)";

constexpr const char* kAdverbs = R"(
again almost already also always automatically away back carefully certainly clearly
completely correctly currently directly easily else enough entirely especially even ever
explicitly finally first frequently fully generally however immediately instead just
later likely mainly manually merely never now often only otherwise perhaps possibly
previously probably quickly rather really recently regularly securely simply sometimes
soon still strictly then therefore thus together too typically usually very well yet
)";

const std::unordered_map<std::string, CoarsePos>& lexicon() {
    static const std::unordered_map<std::string, CoarsePos> table = [] {
        std::unordered_map<std::string, CoarsePos> t;
        // Later lists do not override earlier ones.
        const std::array<std::pair<const char*, CoarsePos>, 6> lists{{
            {kPronouns, CoarsePos::Pronoun},
            {kFunctionWords, CoarsePos::Other},
            {kAdverbs, CoarsePos::Adverb},
            {kVerbs, CoarsePos::Verb},
            {kAdjectives, CoarsePos::Adjective},
            {kNouns, CoarsePos::Noun},
        }};
        for (const auto& [words, pos] : lists)
            for (auto& w : split_whitespace(words)) t.emplace(std::move(w), pos);
        return t;
    }();
    return table;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() > suffix.size() + 1 && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

CoarsePos coarse_pos(std::string_view word) {
    if (std::none_of(word.begin(), word.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); }))
        return CoarsePos::Other;

    const auto& table = lexicon();
    if (auto it = table.find(std::string(word)); it != table.end()) return it->second;

    // Inflected forms of known verbs.
    for (std::string_view suffix : {"ing", "ed", "es", "s"}) {
        if (ends_with(word, suffix)) {
            std::string base(word.substr(0, word.size() - suffix.size()));
            for (const std::string& cand : {base, base + "e"}) {
                auto it = table.find(cand);
                if (it != table.end() && it->second == CoarsePos::Verb) return CoarsePos::Verb;
                if (it != table.end() && it->second == CoarsePos::Noun && suffix == "s") return CoarsePos::Noun;
            }
        }
    }

    if (ends_with(word, "ly")) return CoarsePos::Adverb;
    for (std::string_view suffix : {"tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "er", "or"})
        if (ends_with(word, suffix)) return CoarsePos::Noun;
    for (std::string_view suffix : {"ize", "ise", "ify", "ate", "ing", "ed"})
        if (ends_with(word, suffix)) return CoarsePos::Verb;
    for (std::string_view suffix : {"ous", "ful", "able", "ible", "ive", "al", "ic", "less", "ish"})
        if (ends_with(word, suffix)) return CoarsePos::Adjective;
    return CoarsePos::Noun;
}

std::size_t pos_lexicon_size() { return lexicon().size(); }

}  // namespace kgsec::text
