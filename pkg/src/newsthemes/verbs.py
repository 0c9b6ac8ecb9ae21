"""Embedded finite-verb lexicon.

Base forms plus common irregular past/participle forms, all lowercase.
Regular inflections (-s/-es/-ed/-ing) are recognized by suffix heuristics in
the summarizer, so they are not enumerated here. The list skews toward verbs
frequent in news copy (markets, deals, politics, courts).
"""

from __future__ import annotations

_WORDS = """
abandon abate abolish absorb accelerate accept access acclaim accommodate accompany accomplish
accrue accumulate accuse achieve acknowledge acquire acquit act activate adapt add address adjourn
adjust administer admit adopt advance advise advocate affect affirm afford age aggravate agree aid
aim alert allege alleviate allocate allow allude alter amass amend analyze analyse anchor announce
annul answer anticipate apologize appeal appear appease applaud apply appoint appraise appreciate
approach approve arbitrate argue arise arose arisen arm arraign arrange arrest arrive ascend ask
assail assault assemble assert assess assign assist assume assure attack attain attempt attend
attract attribute auction audit augment authorize avert avoid await awaken award
back backfire bail balk ban bank bar bargain base bat battle be beat beaten became become begin
began begun behave believe belong bemoan benefit best bet betray bid bind blame blast bleed bled
blend bless block bloom blossom blow blew blown blunt blur boast boil bolster bomb book boom boost
border borrow bounce bow boycott brace brake branch brand breach break broke broken brew bridge
brief bring brought broaden broker browse bruise brush budge budget build built bulge bully bundle
buoy burn burned burnt burst bury buy bought buzz bypass
calculate calibrate call calm campaign cancel cap capitalize capture care carry carve cast catch
caught cater caution cave cease cede celebrate cement censor censure center certify chair challenge
champion change characterize charge chart chase cheat check cheer cherish choke choose chose chosen
chop circle circulate circumvent cite claim clamp clarify clash classify clean clear click climb
clinch cling clung clip close clutch coach coax codify collaborate collapse collect combat combine
come came command commence commend comment commission commit communicate compare compel compensate
compete compile complain complete complicate comply compose compound comprise compromise compute
conceal concede conceive concentrate concern conclude condemn condition conduct confer confess
confide confirm confiscate conflict confront confuse congratulate connect conquer consent consider
consist console consolidate conspire constitute constrain construct construe consult consume
contact contain contaminate contemplate contend contest continue contract contradict contrast
contribute control convene converge convert convey convict convince cooperate coordinate cope copy
corner correct correspond corroborate cost counsel count counter countersue couple court cover
covet crack craft crash crave create credit creep crept criminalize cripple criticize crop cross
crowd crown cruise crumble crunch crush cry culminate curb cure curtail cushion cut
damage dampen dance dangle dare darken dash date dawn deal dealt debate debunk debut decelerate
decide declare decline decouple decrease decree dedicate deduce deduct deem deepen default defeat
defend defer define deflate deflect defraud defuse defy degrade delay delegate delete deliberate
delight delist deliver demand demolish demonstrate demote denounce dent deny depart depend depict
deplete deplore deploy deport depose deposit depreciate depress deprive derail derive descend
describe desert deserve design designate desire destabilize destroy detail detain detect deter
deteriorate determine dethrone devalue devastate develop deviate devise devote devour diagnose
dictate die differ dig dug digest dilute diminish dip direct disagree disappear disappoint disarm
disavow disband discard discharge disclose discontinue discount discourage discover discredit
discuss dislike dismantle dismiss disobey disparage dispatch dispel dispense disperse displace
display dispose dispute disregard disrupt dissent dissolve dissuade distance distill distort
distract distribute disturb dive diverge diversify divert divest divide divulge do did done dodge
dominate donate double doubt downgrade downplay downsize draft drag drain draw drew drawn dread
dream dress drift drill drink drank drunk drive drove driven drop drown dry dump dwarf dwell
dwindle
earmark earn ease eat ate eaten echo eclipse edge edit educate effect eject elaborate elect elevate
elicit eliminate elude email embark embarrass embed embolden embrace emerge emphasize employ
empower empty emulate enable enact encounter encourage encroach end endanger endorse endure energize
enforce engage engineer engulf enhance enjoin enjoy enlarge enlist enrage enrich enroll ensnare
ensue ensure entail enter entertain entice entrench entrust envisage envision equal equip eradicate
erase erect erode erupt escalate escape eschew escort establish estimate evacuate evade evaluate
evaporate evict evoke evolve exacerbate examine exceed excel exchange exclude excuse execute
exempt exercise exert exhaust exhibit exist exit exonerate expand expect expedite expel experience
expire explain explode exploit explore export expose expropriate extend extinguish extort extract
extradite eye eyed
fabricate face facilitate factor fade fail fake fall fell fallen falsify falter fan fare fashion
fast fasten father fault favor fear feature feed fed feel felt fend ferry fetch fight fought file
fill finalize finance find found fine finish fire firm fit fix fizzle flag flare flash flatten
flee fled flip float flock flood flop flounder flourish flout flow fluctuate fly flew flown focus
foil fold follow forbid forbade forbidden force forecast foreclose foresee foreshadow forfeit forge
forget forgot forgotten forgive forgave forgiven form formalize formulate fortify forward foster
foul fracture frame free freeze froze frozen frequent freshen fret frighten front fuel fulfill
function fund funnel furlough further fuse
gain gamble garner gather gauge gear generate get got gotten give gave given glean glide go goes
went gone gobble govern grab grade graduate grant grapple grasp gravitate graze greet grieve grill
grind ground grip groom grow grew grown guarantee guard guess guide gut gyrate
hail halt halve hammer hamper hand handle hang hung happen harass harbor harden harm harness
harvest haul have has had haunt head heal hear heard hearten heat hedge heed heighten help hem
herald hide hid hidden highlight hike hinder hinge hint hire hit hoard hobble hold held hollow
homer hone honor hook hope host hound house hover hurt hurtle hush hustle
identify idle ignite ignore illuminate illustrate imagine imitate immerse impact impair impanel
impede imperil implement implicate implode imply import impose impound improve improvise impugn
inaugurate incapacitate incense incentivize inch incite include incorporate increase incur indicate
indict induce indulge infect infer inflame inflate inflict influence inform infringe infuse inhabit
inherit inhibit initiate inject injure innovate inquire insert insist inspect inspire install
instigate institute instruct insulate insult insure integrate intend intensify interact intercede
intercept interest interfere interject interpret interrogate interrupt intervene interview
introduce intrude inundate invade invalidate invent invest investigate invigorate invite invoke
involve irk iron isolate issue itemize
jail jeopardize jettison jilt jockey join jolt judge jump justify
keep kept key kick kidnap kill kindle knock know knew known
label lack lag lambaste land languish lapse last latch laud laugh launch launder lay laid layer
lead led leak lean leap leaped leapt learn learned learnt lease leave left lecture legalize
legislate legitimize lend lent lessen let level leverage levy liberalize license lie lay lain lied
lift light lit lighten like liken limit line linger link liquidate list listen litigate live load
loan lobby localize locate lock lodge log loom loosen lose lost love lower lull lure lurk
mail maintain make made manage mandate maneuver manipulate manufacture map mar march margin mark
market marshal mask mass master match materialize matter mature maximize mean meant measure mediate
meet met meld mellow melt mend mention merge merit mesh migrate mimic mine mingle minimize mint
mirror misappropriate miscalculate mishandle misinform mislead misled mismanage misplace misread
miss misstate mistake mistook mistaken misuse mitigate mix mobilize model moderate modernize modify
mold monetize monitor monopolize moor morph mount mourn move mow mull multiply muster mute muzzle
name narrow nationalize navigate near need negate neglect negotiate net neutralize nix nominate
normalize note notice notify nudge nullify number nurse nurture
obey object obligate oblige obscure observe obstruct obtain occupy occur offer offload offset
officiate oil okay omit ooze open operate opine oppose opt order organize orchestrate oust outbid
outdo outgrow outlaw outline outlast outnumber outpace outperform output outrage outsell outshine
outsource outstrip outweigh overcome overcame overdo overhaul overlap overlook overpay overpower
overreach override overrode overridden overrule overrun oversee oversaw overseen overshadow
overshoot overstate overstep overtake overtook overtaken overturn overwhelm owe own
pace pacify pack package pad paint pair pan panic parachute paralyze pardon pare park part
participate partner pass patch patent patrol pause pave pay paid peak peddle peg penalize pend
penetrate perceive perch perfect perform permit persist personalize persuade pertain petition
phase photograph pick picket picture pile pilot pin pinch pinpoint pioneer pique pitch pivot place
plague plan plant play plead pleaded pled please pledge plot plow pluck plug plummet plunge ply
pocket point poise poison police polish poll pollute ponder pool pop popularize populate pose
position possess post postpone pound pour power practice praise pray preach precede preclude
predict preempt prefer prejudge prepare prescribe present preserve preside press pressure presume
pretend prevail prevent price prime print prioritize privatize prize probe proceed process proclaim
procure produce profess profit program progress prohibit project proliferate prolong promise
promote prompt pronounce prop propel propose prosecute prospect prosper protect protest prove
proved proven provide provoke prune pry publicize publish pull pummel pump punish purchase purge
pursue push put
quadruple qualify quantify quarrel quash quell query question queue quit quiz quote
race rack raid raise rake rally ramp range rank ransack rate ratify ration rattle ravage reach
react read readjust readmit reaffirm realign realize reap reappear reappoint rearrange reason
reassert reassess reassign reassure rebalance rebel rebound rebrand rebuff rebuild rebuilt rebuke
rebut recall recant recapture recede receive recess recharge reckon reclaim recognize recommend
reconcile reconsider reconstruct reconvene record recount recoup recover recruit rectify recuse
recycle redeem redefine redeploy redesign redirect rediscover redistribute redo redouble redraw
reduce reel reelect reenter reexamine refer refile refinance refine reflect refocus reform refrain
refresh refuel refund refurbish refuse refute regain regard register regret regroup regulate rehire
reign reignite reimburse rein reinforce reinstate reintroduce reinvent reinvest reiterate reject
rejoin rekindle relaunch relax relay release relegate relent relieve relinquish relist relocate
rely remain remake remand remark remedy remember remind remit remodel remove renegotiate renew
renounce renovate rent reopen reorganize repair repatriate repay repaid repeal repeat repel
replace replenish replicate reply report reposition repossess represent repress reprice reprimand
reproach reprocess reproduce repudiate repurchase repurpose request require requisition reroute
rescind rescue research resell resemble resent reserve reset resettle reshape reshuffle reside
resign resist resolve resonate resort resound respect respond rest restart restate restore
restrain restrict restructure resubmit result resume resurface resurrect retain retake retaliate
rethink retire retool retract retrain retreat retrench retrieve retry return revamp reveal revel
reverberate reverse revert review revile revise revisit revitalize revive revoke revolt revolve
reward rework rewrite rewrote rewritten rid ride rode ridden ridicule rig ring rang rung rip ripen
rise rose risen risk rival roam rob rock roil roll romp root rot rotate rout route rove row rub
ruin rule run ran rush
sabotage sack sacrifice saddle safeguard sag sail salvage sample sanction sanitize sap satisfy
saturate save savor say said scale scan scare scatter schedule scheme school scoff scold scoop
scorch score scorn scour scout scramble scrap scratch screen script scrub scrutinize scuttle seal
search season seat secede secure see saw seen seek sought seem seep seethe segment seize select
sell sold send sent sense sentence separate serve set settle sever shake shook shaken shape share
sharpen shatter shave shed shelter shelve shepherd shield shift shine shone ship shock shoot shot
shop shore short shorten shoulder shout shove show showed shown shred shrink shrank shrunk shrug
shun shut shutter shy sidestep sideline sidetrack sift sign signal simplify simulate sink sank
sunk sit sat situate size sketch skew skid skip skirt skyrocket slam slap slash slate slay slew
slain sleep slept slice slide slid slim sling slung slip slow slump smash smooth smother snap
snatch snub soar sober socialize soften solicit solidify solve soothe sort sound sour source sow
sowed sown space span spar spare spark speak spoke spoken spearhead specialize specify speculate
speed sped spend spent spike spill spin spun spiral split spoil sponsor spook spot spread spring
sprang sprung sprout spur spurn spy squander square squash squeeze stabilize stack staff stage
stagger stagnate stain stake stall stamp stand stood standardize star stare start startle starve
stash state station staunch stave stay steady steal stole stolen steer stem step sterilize stick
stuck stifle stimulate sting stung stipulate stir stock stoke stomach stop store storm straddle
straighten strain strand strategize streamline strengthen stress stretch strike struck stride
strode strip strive strove striven structure struggle stub study stuff stumble stun stunt stymie
subdue subject submit subpoena subscribe subside subsidize substantiate substitute subtract
subvert succeed succumb sue suffer suffice suggest suit sum summon supervise supplant supplement
supply support suppose suppress surface surge surmise surmount surpass surprise surrender surround
survey survive suspect suspend sustain swallow swap sway swear swore sworn sweep swept sweeten
swell swelled swollen swim swam swum swing swung switch symbolize sync synchronize
table tabulate tack tackle tailor taint take took taken talk tally tame tamper tank tap taper
target tarnish task taste tax teach taught team tear tore torn tease telegraph tell told temper
tempt tend tender terminate test testify thank thaw think thought thin thrash threaten thrive
throttle throw threw thrown thrust thwart tick tie tighten tilt time tip toast tolerate toll top
topple torpedo toss total totter touch tough toughen tour tout tow tower trace track trade trail
train transfer transform transit translate transmit transpire transplant transport trap travel
traverse tread trek tremble trend trespass trick trigger trim triple triumph trouble trounce
truck trump truncate trust try tuck tumble tune turn tutor tweak twist type
unblock uncover undercut undergo underwent undergone underline undermine underperform underpin
underscore understand understood understate undertake undertook undertaken undervalue underwrite
undid undo undone unearth unfold unify unionize unite unleash unload unlock unmask unnerve unplug
unravel unseat unsettle untangle unveil unwind unwound upend upgrade uphold upheld uproot upset
urge use usher usurp utilize utter
vacate validate value vanish vanquish vary vault veer vent venture verify vet veto vex vie view
vindicate violate visit voice void volunteer vote vouch vow
wade wage wait waive wake woke woken walk wane want ward warn warp warrant wash waste watch water
wave waver weaken wean wear wore worn weather weave wove woven wed wedge weigh welcome weld whip
whittle widen wield will win won wind wound windup wipe wire wish withdraw withdrew withdrawn
wither withhold withheld withstand withstood witness woo work worried worry worsen wrangle wrap
wreak wreck wrest wrestle wring wrung write wrote written
yank yearn yell yield
zero zigzag zip zoom
am are is was were been being
can could may might must shall should would
""".split()

VERB_LEXICON: frozenset[str] = frozenset(_WORDS)
